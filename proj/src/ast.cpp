#include "rosi/ast.hpp"

namespace rosi {

const char* compare_op_text(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "<>";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

ExprPtr Expr::make_column(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Column;
    e->column = std::move(name);
    return e;
}

ExprPtr Expr::make_literal(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Literal;
    e->literal = std::move(v);
    return e;
}

ExprPtr Expr::make_compare(CompareOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Compare;
    e->op = op;
    e->children = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr Expr::make_like(std::string column, std::string pattern) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Like;
    e->column = std::move(column);
    e->pattern = std::move(pattern);
    return e;
}

ExprPtr Expr::make_is_null(std::string column, bool negated) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::IsNull;
    e->column = std::move(column);
    e->negated = negated;
    return e;
}

ExprPtr Expr::make_and(std::vector<ExprPtr> children) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::And;
    e->children = std::move(children);
    return e;
}

ExprPtr Expr::make_or(std::vector<ExprPtr> children) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Or;
    e->children = std::move(children);
    return e;
}

ExprPtr Expr::make_not(ExprPtr child) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Not;
    e->children = {std::move(child)};
    return e;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    if (a.column != b.column || a.pattern != b.pattern || a.negated != b.negated) return false;
    if (a.kind == Expr::Kind::Literal && !(a.literal == b.literal)) return false;
    if (a.kind == Expr::Kind::Compare && a.op != b.op) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!expr_equal(a.children[i], b.children[i])) return false;
    }
    return true;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return expr_equal(*a, *b);
}

void collect_columns(const Expr& expr, std::set<std::string>& out) {
    if (!expr.column.empty()) out.insert(expr.column);
    for (const auto& child : expr.children) collect_columns(*child, out);
}

std::set<std::string> collect_columns(const Expr& expr) {
    std::set<std::string> out;
    collect_columns(expr, out);
    return out;
}

bool contains_or(const Expr& expr) {
    if (expr.kind == Expr::Kind::Or) return true;
    for (const auto& child : expr.children) {
        if (contains_or(*child)) return true;
    }
    return false;
}

bool stmt_equal(const SelectStmt& a, const SelectStmt& b) {
    return a.distinct == b.distinct && a.star == b.star && a.projection == b.projection &&
           a.from == b.from && expr_equal(a.where, b.where) && a.order_by == b.order_by &&
           a.limit == b.limit;
}

}  // namespace rosi
