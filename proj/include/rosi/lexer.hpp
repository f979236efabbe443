#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rosi/ast.hpp"

namespace rosi {

// Full-input tokenization. Keywords are case-insensitive, string literals use
// single quotes with '' escaping. Throws LexError with the byte offset of an
// unterminated string or illegal character.
std::vector<Token> tokenize(std::string_view text);

// Renders a token back to query-language surface form (string literals
// re-escaped). Joining rendered tokens with spaces re-tokenizes to the same
// stream.
std::string render_token(const Token& token);

}  // namespace rosi
