#pragma once

#include <string>
#include <string_view>

#include "rosi/ast.hpp"

namespace rosi {

// Recursive-descent parse of the query grammar. Throws LexError or ParseError
// carrying a byte offset into `text` (possibly text.size() for end-of-input).
SelectStmt parse_query(std::string_view text);

// Canonical pretty-printer. render(parse(q)) reparses to an equal AST.
std::string render_query(const SelectStmt& stmt);
std::string render_expr(const Expr& expr);

}  // namespace rosi
