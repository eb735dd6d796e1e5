#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axiomkit/axiom_graph.hpp"
#include "axiomkit/ontology_store.hpp"
#include "axiomkit/wsml/ast.hpp"

namespace axiomkit {

struct RenderOptions {
    wsml::NegationFlavor negation = wsml::NegationFlavor::Not;
};

inline constexpr const char* kAxiomDescription = "Auto-generated axiom by Axiom Editor";

/// Expression tree the generator prints; empty when nothing is connected to Start.
std::optional<wsml::Expr> build_expression(const AxiomModel& model, const OntologyRegistry& registry,
                                           const RenderOptions& options = {});

/// Multi-line layout of an expression, each line prefixed by `indent` spaces; no trailing '.'.
std::string layout_expression(const wsml::Expr& expr, int indent);

std::string generate_axiom_text(const AxiomModel& model, const OntologyRegistry& registry,
                                const RenderOptions& options = {});

/// `autoGeneratedAxiom_<n>`
std::string auto_axiom_name(std::uint64_t n);

/// One `<short> _"<iri>"` line per ontology the model references, sorted by short name.
std::string namespace_preamble(const OntologyRegistry& registry, const AxiomModel& model);

struct CapabilitySection {
    std::string kind;  // precondition | postcondition | assumption | effect
    std::string description;
    std::vector<std::string> shared_variables;
    wsml::Expr body;
};

/// Capability skeleton with sections in canonical order; sharedVariables is the union of all sections'.
std::string emit_capability(const std::vector<CapabilitySection>& sections);

}  // namespace axiomkit
