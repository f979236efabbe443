#pragma once

#include <string_view>

#include "rosi/ast.hpp"
#include "rosi/relation.hpp"

namespace rosi {

// Kleene three-valued truth.
enum class TruthValue { False, Unknown, True };

TruthValue kleene_not(TruthValue v);
TruthValue kleene_and(TruthValue a, TruthValue b);
TruthValue kleene_or(TruthValue a, TruthValue b);

// SQL LIKE: '%' matches any run (including empty), '_' exactly one character,
// everything else literally. Case-sensitive, no escape character.
bool like_match(std::string_view subject, std::string_view pattern);

// Evaluates `expr` against one tuple. Comparisons with a NULL operand yield
// Unknown; IS [NOT] NULL is always definite. Column types were checked at
// plan time, so evaluation itself cannot fail.
TruthValue eval_expr(const Expr& expr, const Tuple& tuple, const RelationSchema& schema);

// Filter semantics: keep the tuple iff the predicate is True.
bool eval_predicate(const Expr& expr, const Tuple& tuple, const RelationSchema& schema);

}  // namespace rosi
