#include "rosi/plan.hpp"

#include <algorithm>
#include <stdexcept>

#include "rosi/error.hpp"

namespace rosi {

namespace {

std::string column_list(const RelationSchema& schema) {
    std::string out;
    for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
        if (i) out += ", ";
        out += schema.attributes[i].name;
    }
    return out;
}

template <typename Container>
void require_columns(const Container& columns, const RelationSchema& schema) {
    for (const auto& column : columns) {
        if (!schema.has_attribute(column)) {
            throw Error(ErrorCode::UnknownColumn, "unknown column '" + column +
                                                      "' (available: " + column_list(schema) + ")");
        }
    }
}

PlanPtr new_node(PlanNode::Kind kind) {
    auto node = std::make_unique<PlanNode>();
    node->kind = kind;
    return node;
}

}  // namespace

PlanPtr make_scan(const RelationSchema& schema, ExprPtr pushed) {
    if (pushed) require_columns(collect_columns(*pushed), schema);
    auto node = new_node(PlanNode::Kind::Scan);
    node->relation = schema.name;
    node->output_schema = schema;
    node->pushed = std::move(pushed);
    return node;
}

PlanPtr make_filter(ExprPtr predicate, PlanPtr child) {
    if (!predicate) throw std::logic_error("make_filter: null predicate");
    require_columns(collect_columns(*predicate), child->output_schema);
    auto node = new_node(PlanNode::Kind::Filter);
    node->output_schema = child->output_schema;
    node->predicate = std::move(predicate);
    node->children.push_back(std::move(child));
    return node;
}

PlanPtr make_project(std::vector<std::string> columns, PlanPtr child) {
    require_columns(columns, child->output_schema);
    auto node = new_node(PlanNode::Kind::Project);
    node->output_schema.name = child->output_schema.name;
    for (const auto& column : columns) {
        node->output_schema.attributes.push_back(
            {column, child->output_schema.type_of(column)});
    }
    node->output_schema.key = columns;
    node->columns = std::move(columns);
    node->children.push_back(std::move(child));
    return node;
}

PlanPtr make_natural_join(PlanPtr left, PlanPtr right) {
    const RelationSchema& ls = left->output_schema;
    const RelationSchema& rs = right->output_schema;

    bool shared = false;
    for (const auto& attr : rs.attributes) {
        if (!ls.has_attribute(attr.name)) continue;
        shared = true;
        if (ls.type_of(attr.name) != attr.type) {
            throw Error(ErrorCode::TypeMismatch,
                        "attribute '" + attr.name + "' has conflicting types across join inputs");
        }
    }
    if (!shared) {
        throw Error(ErrorCode::AmbiguityUnsupported,
                    "relations share no attributes; cross products are not supported (" +
                        column_list(ls) + " vs " + column_list(rs) + ")");
    }

    auto node = new_node(PlanNode::Kind::NaturalJoin);
    node->output_schema.attributes = ls.attributes;
    for (const auto& attr : rs.attributes) {
        if (!ls.has_attribute(attr.name)) node->output_schema.attributes.push_back(attr);
    }
    for (const auto& attr : node->output_schema.attributes) {
        node->output_schema.key.push_back(attr.name);
    }
    node->children.push_back(std::move(left));
    node->children.push_back(std::move(right));
    return node;
}

PlanPtr make_sort(std::vector<OrderKey> keys, PlanPtr child) {
    std::vector<std::string> columns;
    for (const auto& key : keys) columns.push_back(key.column);
    require_columns(columns, child->output_schema);
    auto node = new_node(PlanNode::Kind::Sort);
    node->output_schema = child->output_schema;
    node->keys = std::move(keys);
    node->children.push_back(std::move(child));
    return node;
}

PlanPtr make_limit(std::int64_t n, PlanPtr child) {
    if (n < 0) throw std::logic_error("make_limit: negative limit");
    auto node = new_node(PlanNode::Kind::Limit);
    node->output_schema = child->output_schema;
    node->limit = n;
    node->children.push_back(std::move(child));
    return node;
}

PlanPtr make_distinct(PlanPtr child) {
    auto node = new_node(PlanNode::Kind::Distinct);
    node->output_schema = child->output_schema;
    node->children.push_back(std::move(child));
    return node;
}

PlanPtr make_union_all(std::vector<PlanPtr> children) {
    if (children.empty()) throw std::logic_error("make_union_all: no children");
    const RelationSchema& first = children[0]->output_schema;
    for (const auto& child : children) {
        if (child->output_schema.attributes != first.attributes) {
            throw std::logic_error("make_union_all: children have mismatched schemas");
        }
    }
    auto node = new_node(PlanNode::Kind::UnionAll);
    node->output_schema = first;
    node->children = std::move(children);
    return node;
}

PlanPtr clone_plan(const PlanNode& plan) {
    auto node = std::make_unique<PlanNode>();
    node->kind = plan.kind;
    node->output_schema = plan.output_schema;
    node->relation = plan.relation;
    node->pushed = plan.pushed;  // expressions are immutable, sharing is safe
    node->predicate = plan.predicate;
    node->columns = plan.columns;
    node->keys = plan.keys;
    node->limit = plan.limit;
    for (const auto& child : plan.children) node->children.push_back(clone_plan(*child));
    return node;
}

std::size_t count_scans(const PlanNode& plan) {
    if (plan.kind == PlanNode::Kind::Scan) return 1;
    std::size_t total = 0;
    for (const auto& child : plan.children) total += count_scans(*child);
    return total;
}

}  // namespace rosi
