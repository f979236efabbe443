#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rosi/relation.hpp"

namespace rosi {

enum class TokenKind {
    Keyword,
    Identifier,
    IntLiteral,
    StringLiteral,
    Symbol,
};

struct Token {
    TokenKind kind;
    // Keywords canonicalized to uppercase, identifiers folded to lowercase,
    // string literals unescaped.
    std::string text;
    std::size_t offset = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* compare_op_text(CompareOp op);

struct Expr;
// Predicates are shared immutable trees; pushdown replicates subtrees into
// several scans without copying.
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Column, Literal, Compare, Like, IsNull, And, Or, Not };

    Kind kind;
    std::string column;            // Column, Like, IsNull
    Value literal;                 // Literal
    CompareOp op = CompareOp::Eq;  // Compare
    std::string pattern;           // Like
    bool negated = false;          // IsNull (IS NOT NULL)
    std::vector<ExprPtr> children; // Compare [lhs, rhs], And, Or, Not [child]

    static ExprPtr make_column(std::string name);
    static ExprPtr make_literal(Value v);
    static ExprPtr make_compare(CompareOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr make_like(std::string column, std::string pattern);
    static ExprPtr make_is_null(std::string column, bool negated);
    static ExprPtr make_and(std::vector<ExprPtr> children);
    static ExprPtr make_or(std::vector<ExprPtr> children);
    static ExprPtr make_not(ExprPtr child);
};

bool expr_equal(const Expr& a, const Expr& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Column names referenced anywhere in the expression.
void collect_columns(const Expr& expr, std::set<std::string>& out);
std::set<std::string> collect_columns(const Expr& expr);

// True if any Or node occurs in the tree; such predicates are never pushed
// below a join.
bool contains_or(const Expr& expr);

struct OrderKey {
    std::string column;
    bool descending = false;

    friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct SelectStmt {
    bool distinct = false;
    bool star = false;                      // SELECT * (requires FROM)
    std::vector<std::string> projection;    // empty iff star
    std::optional<std::vector<std::string>> from;  // absent: universal-relation query
    ExprPtr where;                          // may be null
    std::vector<OrderKey> order_by;
    std::optional<std::int64_t> limit;
};

bool stmt_equal(const SelectStmt& a, const SelectStmt& b);

}  // namespace rosi
