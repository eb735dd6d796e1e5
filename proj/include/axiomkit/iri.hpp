#pragma once

#include <string>
#include <string_view>

namespace axiomkit::iri {

inline constexpr std::string_view kBuiltinOntology = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kUniversal = "http://www.wsmo.org/wsml/wsml-syntax#true";
inline constexpr std::string_view kWsmlNamespace = "http://www.wsmo.org/wsml/wsml-syntax#";
inline constexpr std::string_view kDublinCore = "http://purl.org/dc/elements/1.1#";

/// Everything up to and including the last '#' or '/'.
std::string namespace_of(std::string_view iri);

/// Everything after the last '#' or '/'.
std::string local_name(std::string_view iri);

/// Namespace with any trailing '#' removed; used to guess the ontology owning an element.
std::string ontology_of_namespace(std::string_view ns);

/// Last path segment after stripping a trailing '#' or '/'.
std::string last_segment(std::string_view iri);

}  // namespace axiomkit::iri
