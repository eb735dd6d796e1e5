#include "axiomkit/iri.hpp"

namespace axiomkit::iri {

std::string namespace_of(std::string_view iri) {
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos) return {};
    return std::string(iri.substr(0, pos + 1));
}

std::string local_name(std::string_view iri) {
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos) return std::string(iri);
    return std::string(iri.substr(pos + 1));
}

std::string ontology_of_namespace(std::string_view ns) {
    if (!ns.empty() && ns.back() == '#') ns.remove_suffix(1);
    return std::string(ns);
}

std::string last_segment(std::string_view iri) {
    while (!iri.empty() && (iri.back() == '#' || iri.back() == '/')) iri.remove_suffix(1);
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos) return std::string(iri);
    return std::string(iri.substr(pos + 1));
}

}  // namespace axiomkit::iri
