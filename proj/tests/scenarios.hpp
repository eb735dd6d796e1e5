#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"

namespace testsupport {

// ---------------------------------------------------------------- subsumption oracle

struct Dag {
    int size = 0;
    std::vector<std::vector<int>> parents;  // parents[i] only holds indices < i
    std::string wsml;                       // ontology declaring c0..c<n-1>
};

Dag random_dag(std::mt19937& rng, int max_nodes = 50);
std::string dag_concept_iri(int i);

/// Pairs (a, b) where the registry's is_compatible(a, {b}) disagrees with brute-force
/// reflexive-transitive reachability over `parents`.
std::size_t subsumption_mismatches(const Dag& dag);

// ---------------------------------------------------------------- fuzz corpus

struct FuzzRun {
    std::vector<std::string> snapshots;  // model JSON before the first op and after each op
    std::vector<std::string> ops;        // op names applied, for failure messages
};

/// Registry with the shipped trainConnection and locations ontologies loaded.
void load_fuzz_ontologies(axiomkit::OntologyRegistry& registry);

/// Applies up to `max_ops` random enabled menu entries (the gated path) to `engine`.
FuzzRun random_session(axiomkit::Engine& engine, std::uint32_t seed, int max_ops = 30);

/// "" when the generated body reparses to the generator's own expression tree.
std::string roundtrip_failure(const axiomkit::AxiomModel& model, const axiomkit::OntologyRegistry& registry);

/// "" when undoing every step walks back through the snapshots and redoing walks forward again.
std::string undo_redo_failure(axiomkit::Engine& engine, const FuzzRun& run);

std::string snapshot(const axiomkit::AxiomModel& model);

// ---------------------------------------------------------------- gating sweep

struct SweepStats {
    std::size_t targets = 0;
    std::size_t checks = 0;
    std::vector<std::string> disagreements;
};

/// Checks every (target, entry, option) of every target in the engine's current state by
/// invoking the operation directly on a copy of the engine.
void sweep_state(const axiomkit::Engine& engine, SweepStats& stats);

/// Sweeps the 29 worked-example states (state k = script replayed through step k).
SweepStats sweep_itinerary();

// ---------------------------------------------------------------- naming scenarios

/// Refines origin and destination of a trip with stations, then binds stationName and locatedIn
/// on both. Returns the four bound names in order.
std::vector<std::string> naming_duplication_scenario();

/// Creates three variables of concept Лице; returns their names.
std::vector<std::string> naming_cyrillic_scenario();

/// Short names after loading the two dateTime ontologies in order.
std::vector<std::string> short_name_scenario();

}  // namespace testsupport
