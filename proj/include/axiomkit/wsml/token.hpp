#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "axiomkit/error.hpp"

namespace axiomkit::wsml {

enum class TokenKind {
    Keyword,
    Identifier,
    QName,
    Variable,
    AnonVariable,
    Iri,
    String,
    Number,
    Punct,
    DateCtor,
    End,
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::End;
    /// Source text; for strings and IRIs the unescaped content.
    std::string lexeme;
    Position position;

    bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
    bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
    bool is_punct(std::string_view text) const { return is(TokenKind::Punct, text); }
};

bool is_keyword(std::string_view word);

/// Keywords the lexer knows but the parser refuses.
bool is_unsupported_keyword(std::string_view word);

/// Tokenizes the whole input. The returned stream always ends with an End token.
/// Throws Error(LexError) at the first offending character.
std::vector<Token> tokenize(std::string_view text);

/// True when `name` (without the leading '?') is a lexically valid variable name.
bool is_identifier_text(std::string_view name);

}  // namespace axiomkit::wsml
