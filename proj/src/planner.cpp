#include "rosi/planner.hpp"

#include <functional>
#include <memory>
#include <optional>

#include "rosi/error.hpp"
#include "rosi/parser.hpp"
#include "rosi/urm.hpp"

namespace rosi {

namespace {

// Typing context: column lookup over either a concrete schema (FROM queries)
// or the whole attribute registry (FROM-less queries).
struct TypeScope {
    std::function<std::optional<AttrType>(const std::string&)> lookup;
    ErrorCode unknown_code;
    std::string candidates;
};

TypeScope schema_scope(RelationSchema schema) {
    std::string candidates;
    for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
        if (i) candidates += ", ";
        candidates += schema.attributes[i].name;
    }
    auto owned = std::make_shared<RelationSchema>(std::move(schema));
    return {[owned](const std::string& name) -> std::optional<AttrType> {
                if (!owned->has_attribute(name)) return std::nullopt;
                return owned->type_of(name);
            },
            ErrorCode::UnknownColumn, std::move(candidates)};
}

TypeScope registry_scope(const Catalog& catalog) {
    std::string candidates;
    for (const auto& [name, type] : catalog.attribute_registry()) {
        (void)type;
        if (!candidates.empty()) candidates += ", ";
        candidates += name;
    }
    return {[&catalog](const std::string& name) -> std::optional<AttrType> {
                auto it = catalog.attribute_registry().find(name);
                if (it == catalog.attribute_registry().end()) return std::nullopt;
                return it->second;
            },
            ErrorCode::UnknownAttribute, std::move(candidates)};
}

AttrType require_column(const std::string& name, const TypeScope& scope) {
    if (auto type = scope.lookup(name)) return *type;
    std::string what = scope.unknown_code == ErrorCode::UnknownColumn ? "column" : "attribute";
    throw Error(scope.unknown_code, "unknown " + what + " '" + name +
                                        "' (available: " + scope.candidates + ")");
}

std::optional<AttrType> literal_type(const Value& v) {
    switch (v.tag()) {
        case Value::Tag::Null: return std::nullopt;
        case Value::Tag::Bool: return AttrType::Bool;
        case Value::Tag::Int: return AttrType::Int;
        case Value::Tag::Text: return AttrType::Text;
        case Value::Tag::Timestamp: return AttrType::Timestamp;
    }
    return std::nullopt;
}

struct OperandType {
    std::optional<AttrType> type;  // nullopt: NULL literal, compatible with anything
    bool int_literal = false;      // INT literals also satisfy TIMESTAMP columns
};

OperandType operand_type(const Expr& operand, const TypeScope& scope) {
    if (operand.kind == Expr::Kind::Column) {
        return {require_column(operand.column, scope), false};
    }
    return {literal_type(operand.literal), operand.literal.tag() == Value::Tag::Int};
}

void check_compare_types(const Expr& expr, const TypeScope& scope) {
    OperandType lhs = operand_type(*expr.children[0], scope);
    OperandType rhs = operand_type(*expr.children[1], scope);
    if (!lhs.type || !rhs.type) return;
    if (*lhs.type == *rhs.type) return;
    bool timestamp_int = (*lhs.type == AttrType::Timestamp && rhs.int_literal) ||
                         (*rhs.type == AttrType::Timestamp && lhs.int_literal);
    if (timestamp_int) return;
    throw Error(ErrorCode::TypeMismatch,
                "cannot compare " + std::string(attr_type_name(*lhs.type)) + " '" +
                    render_expr(*expr.children[0]) + "' with " + attr_type_name(*rhs.type) +
                    " '" + render_expr(*expr.children[1]) + "'");
}

void check_expr_types(const Expr& expr, const TypeScope& scope) {
    switch (expr.kind) {
        case Expr::Kind::Compare:
            check_compare_types(expr, scope);
            return;
        case Expr::Kind::Like: {
            AttrType type = require_column(expr.column, scope);
            if (type != AttrType::Text) {
                throw Error(ErrorCode::TypeMismatch, "LIKE requires a TEXT column; '" +
                                                         expr.column + "' is " +
                                                         attr_type_name(type));
            }
            return;
        }
        case Expr::Kind::IsNull:
            require_column(expr.column, scope);
            return;
        case Expr::Kind::Not:
        case Expr::Kind::And:
        case Expr::Kind::Or:
            for (const auto& child : expr.children) check_expr_types(*child, scope);
            return;
        case Expr::Kind::Column:
        case Expr::Kind::Literal:
            return;
    }
}

PlanPtr plan_from_query(const SelectStmt& stmt, const Catalog& catalog) {
    PlanPtr tree;
    for (const auto& name : *stmt.from) {
        PlanPtr scan = make_scan(catalog.relation(name));
        tree = tree ? make_natural_join(std::move(tree), std::move(scan)) : std::move(scan);
    }

    TypeScope scope = schema_scope(tree->output_schema);
    if (stmt.where) {
        check_expr_types(*stmt.where, scope);
        tree = make_filter(stmt.where, std::move(tree));
    }
    if (!stmt.order_by.empty()) {
        // Sorting happens before projection so ORDER BY may use any visible
        // column, projected or not.
        tree = make_sort(stmt.order_by, std::move(tree));
    }

    std::vector<std::string> projection;
    if (stmt.star) {
        for (const auto& attr : tree->output_schema.attributes) projection.push_back(attr.name);
    } else {
        for (const auto& column : stmt.projection) require_column(column, scope);
        projection = stmt.projection;
    }
    tree = make_project(std::move(projection), std::move(tree));

    if (stmt.distinct) tree = make_distinct(std::move(tree));
    if (stmt.limit) tree = make_limit(*stmt.limit, std::move(tree));
    return tree;
}

PlanPtr plan_window_query(const SelectStmt& stmt, const Catalog& catalog) {
    TypeScope scope = registry_scope(catalog);
    for (const auto& column : stmt.projection) require_column(column, scope);
    if (stmt.where) check_expr_types(*stmt.where, scope);

    PlanPtr tree = build_window_plan(stmt.projection, stmt.where, catalog);
    if (!stmt.order_by.empty()) {
        // The window schema is exactly the projected attributes, so ORDER BY
        // here may only use projected columns.
        tree = make_sort(stmt.order_by, std::move(tree));
    }
    // An explicit DISTINCT is redundant: window results are sets already.
    if (stmt.limit) tree = make_limit(*stmt.limit, std::move(tree));
    return tree;
}

ExprPtr and_combine(ExprPtr a, ExprPtr b) {
    if (!a) return b;
    if (!b) return a;
    return Expr::make_and({std::move(a), std::move(b)});
}

void flatten_conjuncts(const ExprPtr& expr, std::vector<ExprPtr>& out) {
    if (expr->kind == Expr::Kind::And) {
        for (const auto& child : expr->children) flatten_conjuncts(child, out);
        return;
    }
    out.push_back(expr);
}

bool is_join_of_scans(const PlanNode& node) {
    if (node.kind == PlanNode::Kind::Scan) return true;
    if (node.kind != PlanNode::Kind::NaturalJoin) return false;
    for (const auto& child : node.children) {
        if (!is_join_of_scans(*child)) return false;
    }
    return true;
}

void collect_scan_nodes(PlanNode& node, std::vector<PlanNode*>& out) {
    if (node.kind == PlanNode::Kind::Scan) {
        out.push_back(&node);
        return;
    }
    for (const auto& child : node.children) collect_scan_nodes(*child, out);
}

bool schema_covers(const RelationSchema& schema, const std::set<std::string>& columns) {
    for (const auto& column : columns) {
        if (!schema.has_attribute(column)) return false;
    }
    return true;
}

PlanPtr rewrite_filters(PlanPtr node) {
    if (node->kind == PlanNode::Kind::Filter && is_join_of_scans(*node->children[0])) {
        PlanPtr child = std::move(node->children[0]);

        // A filter sitting directly on one scan is absorbed whole, OR and
        // all: the provider post-filter evaluates the same three-valued
        // semantics, so nothing changes.
        if (child->kind == PlanNode::Kind::Scan) {
            child->pushed = and_combine(child->pushed, node->predicate);
            return child;
        }

        std::vector<PlanNode*> scans;
        collect_scan_nodes(*child, scans);

        std::vector<ExprPtr> conjuncts;
        flatten_conjuncts(node->predicate, conjuncts);
        std::vector<ExprPtr> residual;
        for (const auto& conjunct : conjuncts) {
            // Disjunctions are never pushed through a join in v1.
            if (contains_or(*conjunct)) {
                residual.push_back(conjunct);
                continue;
            }
            std::set<std::string> columns = collect_columns(*conjunct);
            bool pushed_somewhere = false;
            for (PlanNode* scan : scans) {
                if (schema_covers(scan->output_schema, columns)) {
                    scan->pushed = and_combine(scan->pushed, conjunct);
                    pushed_somewhere = true;
                }
            }
            if (!pushed_somewhere) residual.push_back(conjunct);
        }

        if (residual.empty()) return child;
        ExprPtr residual_pred;
        for (auto& conjunct : residual) {
            residual_pred = and_combine(std::move(residual_pred), std::move(conjunct));
        }
        return make_filter(std::move(residual_pred), std::move(child));
    }

    for (auto& child : node->children) child = rewrite_filters(std::move(child));
    return node;
}

void explain_node(const PlanNode& node, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    switch (node.kind) {
        case PlanNode::Kind::Scan:
            out += "Scan " + node.relation;
            if (node.pushed) out += " [pushed: " + render_expr(*node.pushed) + "]";
            break;
        case PlanNode::Kind::Filter:
            out += "Filter " + render_expr(*node.predicate);
            break;
        case PlanNode::Kind::Project: {
            out += "Project ";
            for (std::size_t i = 0; i < node.columns.size(); ++i) {
                if (i) out += ", ";
                out += node.columns[i];
            }
            break;
        }
        case PlanNode::Kind::NaturalJoin:
            out += "NaturalJoin";
            break;
        case PlanNode::Kind::Sort: {
            out += "Sort ";
            for (std::size_t i = 0; i < node.keys.size(); ++i) {
                if (i) out += ", ";
                out += node.keys[i].column;
                out += node.keys[i].descending ? " DESC" : " ASC";
            }
            break;
        }
        case PlanNode::Kind::Limit:
            out += "Limit " + std::to_string(node.limit);
            break;
        case PlanNode::Kind::Distinct:
            out += "Distinct";
            break;
        case PlanNode::Kind::UnionAll:
            out += "UnionAll";
            break;
    }
    for (const auto& child : node.children) {
        out.push_back('\n');
        explain_node(*child, depth + 1, out);
    }
}

}  // namespace

PlanPtr plan_query(const SelectStmt& stmt, const Catalog& catalog) {
    if (stmt.from) return plan_from_query(stmt, catalog);
    return plan_window_query(stmt, catalog);
}

PlanPtr push_down_predicates(PlanPtr plan) {
    return rewrite_filters(std::move(plan));
}

std::string explain(const PlanNode& plan) {
    std::string out;
    explain_node(plan, 0, out);
    return out;
}

}  // namespace rosi
