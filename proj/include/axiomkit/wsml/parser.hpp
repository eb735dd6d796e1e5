#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "axiomkit/error.hpp"
#include "axiomkit/wsml/ast.hpp"
#include "axiomkit/wsml/token.hpp"

namespace axiomkit::wsml {

class ParseError : public Error {
public:
    ParseError(const std::string& message, Position position, std::vector<std::string> expected,
               std::string found)
        : Error(errc::ParseError, message, position),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::vector<std::string> expected_;
    std::string found_;
};

OntologyDocAst parse_document(std::string_view text);

/// Parses a standalone logical expression; the trailing '.' is optional.
Expr parse_logical_expression(std::string_view text);

std::string serialize(const Term& term);
/// Canonical single-line form, terminated by '.'.
std::string serialize(const Expr& expr);
std::string serialize_body(const Expr& expr);
std::string serialize(const OntologyDocAst& doc);

}  // namespace axiomkit::wsml
