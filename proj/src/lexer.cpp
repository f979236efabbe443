#include "rosi/lexer.hpp"

#include <array>
#include <cctype>

#include "rosi/error.hpp"

namespace rosi {

namespace {

constexpr std::array<std::string_view, 17> kKeywords = {
    "SELECT", "DISTINCT", "FROM", "WHERE", "ORDER", "BY", "LIMIT", "AND", "OR",
    "NOT", "LIKE", "IS", "NULL", "TRUE", "FALSE", "ASC", "DESC",
};

bool is_keyword(std::string_view upper) {
    for (std::string_view kw : kKeywords) {
        if (kw == upper) return true;
    }
    return false;
}

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (is_ident_start(c)) {
            std::string word;
            while (i < text.size() && is_ident_char(text[i])) {
                word.push_back(text[i]);
                ++i;
            }
            std::string upper = word;
            for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            if (is_keyword(upper)) {
                tokens.push_back({TokenKind::Keyword, std::move(upper), start});
            } else {
                std::string lower = word;
                for (char& ch : lower)
                    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                tokens.push_back({TokenKind::Identifier, std::move(lower), start});
            }
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::string digits;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                digits.push_back(text[i]);
                ++i;
            }
            tokens.push_back({TokenKind::IntLiteral, std::move(digits), start});
            continue;
        }
        if (c == '\'') {
            ++i;
            std::string value;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\'') {
                    if (i + 1 < text.size() && text[i + 1] == '\'') {
                        value.push_back('\'');
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                value.push_back(text[i]);
                ++i;
            }
            if (!closed) {
                throw Error(ErrorCode::LexError, "unterminated string literal", start);
            }
            tokens.push_back({TokenKind::StringLiteral, std::move(value), start});
            continue;
        }
        switch (c) {
            case ',':
            case '(':
            case ')':
            case '*':
            case '=':
                tokens.push_back({TokenKind::Symbol, std::string(1, c), start});
                ++i;
                continue;
            case '<':
                if (i + 1 < text.size() && (text[i + 1] == '=' || text[i + 1] == '>')) {
                    tokens.push_back({TokenKind::Symbol, std::string(text.substr(i, 2)), start});
                    i += 2;
                } else {
                    tokens.push_back({TokenKind::Symbol, "<", start});
                    ++i;
                }
                continue;
            case '>':
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    tokens.push_back({TokenKind::Symbol, ">=", start});
                    i += 2;
                } else {
                    tokens.push_back({TokenKind::Symbol, ">", start});
                    ++i;
                }
                continue;
            default:
                throw Error(ErrorCode::LexError,
                            std::string("illegal character '") + c + "'", start);
        }
    }
    return tokens;
}

std::string render_token(const Token& token) {
    if (token.kind == TokenKind::StringLiteral) {
        std::string out = "'";
        for (char c : token.text) {
            if (c == '\'') out += "''";
            else out.push_back(c);
        }
        out.push_back('\'');
        return out;
    }
    return token.text;
}

}  // namespace rosi
