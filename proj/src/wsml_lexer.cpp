#include <array>
#include <cctype>

#include "axiomkit/wsml/token.hpp"

namespace axiomkit::wsml {

namespace {

constexpr std::array kKeywords = {
    "wsmlVariant", "namespace", "ontology", "concept", "subConceptOf", "instance", "memberOf",
    "relation", "subRelationOf", "axiom", "definedBy", "nonFunctionalProperties",
    "endNonFunctionalProperties", "nfp", "endnfp", "hasValue", "ofType", "impliesType",
    "importsOntology", "usesMediator", "and", "or", "not", "naf", "neg", "implies", "impliedBy",
    "equivalent", "forAll", "exists", "capability", "sharedVariables", "precondition",
    "postcondition", "assumption", "effect",
};

constexpr std::array kUnsupported = {"implies", "impliedBy", "equivalent", "forAll", "exists",
                                     ":-",      "!-",        "!=",         ":=:"};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (at_end()) break;
            out.push_back(next());
        }
        out.push_back(Token{TokenKind::End, "", pos_});
        return out;
    }

private:
    bool at_end() const { return i_ >= text_.size(); }
    unsigned char peek(std::size_t k = 0) const {
        return i_ + k < text_.size() ? static_cast<unsigned char>(text_[i_ + k]) : 0;
    }

    void advance() {
        unsigned char c = peek();
        ++i_;
        pos_.offset = i_;
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((c & 0xC0) != 0x80) {
            // columns count code points, not UTF-8 continuation bytes
            ++pos_.column;
        }
    }

    [[noreturn]] void fail(const std::string& msg, Position at) { throw Error(errc::LexError, msg, at); }

    void skip_trivia() {
        for (;;) {
            unsigned char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '*') {
                Position start = pos_;
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (at_end()) fail("unterminated comment", start);
                    advance();
                }
                advance();
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == 0xEF && peek(1) == 0xBB && peek(2) == 0xBF && i_ == 0) {
                i_ = 3;  // byte order mark
                pos_.offset = 3;
            } else {
                return;
            }
        }
    }

    std::string take_ident() {
        std::size_t start = i_;
        while (!at_end() && ident_part(peek())) advance();
        return std::string(text_.substr(start, i_ - start));
    }

    Token next() {
        Position start = pos_;
        unsigned char c = peek();

        if (c == '?') {
            advance();
            if (peek() == '#') {
                advance();
                return {TokenKind::AnonVariable, "?#", start};
            }
            if (!ident_start(peek())) fail("expected variable name after '?'", start);
            return {TokenKind::Variable, "?" + take_ident(), start};
        }

        if (c == '"') return string_literal(start);

        if (c == '_' && peek(1) == '"') {
            advance();
            advance();
            std::string iri;
            while (peek() != '"') {
                if (at_end() || peek() == '\n') fail("unterminated IRI", start);
                iri.push_back(static_cast<char>(peek()));
                advance();
            }
            advance();
            return {TokenKind::Iri, iri, start};
        }

        if (std::isdigit(c) || ((c == '-' || c == '+') && std::isdigit(peek(1)))) {
            return number(start);
        }

        if (ident_start(c)) {
            std::string word = take_ident();
            if (word[0] == '_' && peek() == '(') return {TokenKind::DateCtor, word, start};
            if ((peek() == '#' || peek() == ':') && ident_start(peek(1))) {
                char sep = static_cast<char>(peek());
                advance();
                std::string local = take_ident();
                return {TokenKind::QName, word + sep + local, start};
            }
            if (is_keyword(word)) return {TokenKind::Keyword, word, start};
            return {TokenKind::Identifier, word, start};
        }

        auto punct = [&](std::size_t n) {
            std::string s(text_.substr(i_, n));
            for (std::size_t k = 0; k < n; ++k) advance();
            return Token{TokenKind::Punct, s, start};
        };
        if (c == ':' && peek(1) == '=' && peek(2) == ':') return punct(3);
        if (c == ':' && peek(1) == '-') return punct(2);
        if (c == '!' && (peek(1) == '-' || peek(1) == '=')) return punct(2);
        switch (c) {
            case '(': case ')': case '[': case ']': case '{': case '}':
            case ',': case '.': case '=':
                return punct(1);
            default:
                break;
        }
        std::string shown = c >= 0x20 && c < 0x7F ? std::string(1, static_cast<char>(c)) : "byte";
        fail("unexpected character '" + shown + "'", start);
    }

    Token string_literal(Position start) {
        advance();
        std::string value;
        for (;;) {
            if (at_end()) fail("unterminated string", start);
            unsigned char c = peek();
            if (c == '"') break;
            if (c == '\\') {
                advance();
                if (at_end()) fail("unterminated string", start);
                unsigned char e = peek();
                if (e == 'n') value.push_back('\n');
                else if (e == 't') value.push_back('\t');
                else value.push_back(static_cast<char>(e));
                advance();
                continue;
            }
            value.push_back(static_cast<char>(c));
            advance();
        }
        advance();
        return {TokenKind::String, value, start};
    }

    Token number(Position start) {
        std::size_t begin = i_;
        if (peek() == '-' || peek() == '+') advance();
        while (std::isdigit(peek())) advance();
        if (peek() == '.' && std::isdigit(peek(1))) {
            advance();
            while (std::isdigit(peek())) advance();
        }
        if (ident_start(peek())) fail("malformed number", start);
        return {TokenKind::Number, std::string(text_.substr(begin, i_ - begin)), start};
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Position pos_;
};

}  // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::QName: return "qname";
        case TokenKind::Variable: return "variable";
        case TokenKind::AnonVariable: return "anon_variable";
        case TokenKind::Iri: return "iri";
        case TokenKind::String: return "string";
        case TokenKind::Number: return "number";
        case TokenKind::Punct: return "punct";
        case TokenKind::DateCtor: return "date-ctor";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

bool is_keyword(std::string_view word) {
    for (auto* k : kKeywords)
        if (word == k) return true;
    return false;
}

bool is_unsupported_keyword(std::string_view word) {
    for (auto* k : kUnsupported)
        if (word == k) return true;
    return false;
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

bool is_identifier_text(std::string_view name) {
    if (name.empty() || !ident_start(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
        if (!ident_part(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace axiomkit::wsml
