#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rosi/ast.hpp"
#include "rosi/catalog.hpp"

namespace rosi {

struct PlanNode;
using PlanPtr = std::unique_ptr<PlanNode>;

// Operator tree the executor pulls tuples through. Every node carries its
// derived output schema; the make_* builders verify referenced columns exist
// in their child's schema, so a constructed plan is sound by construction.
struct PlanNode {
    enum class Kind { Scan, Filter, Project, NaturalJoin, Sort, Limit, Distinct, UnionAll };

    Kind kind;
    RelationSchema output_schema;
    std::vector<PlanPtr> children;

    std::string relation;              // Scan
    ExprPtr pushed;                    // Scan (may be null)
    ExprPtr predicate;                 // Filter
    std::vector<std::string> columns;  // Project
    std::vector<OrderKey> keys;        // Sort
    std::int64_t limit = 0;            // Limit
};

PlanPtr make_scan(const RelationSchema& schema, ExprPtr pushed = nullptr);
PlanPtr make_filter(ExprPtr predicate, PlanPtr child);
PlanPtr make_project(std::vector<std::string> columns, PlanPtr child);
// Output schema: left attributes, then right attributes minus the shared
// ones. Throws NoSharedAttributes (as AmbiguityUnsupported) when the children
// share no attribute name.
PlanPtr make_natural_join(PlanPtr left, PlanPtr right);
PlanPtr make_sort(std::vector<OrderKey> keys, PlanPtr child);
PlanPtr make_limit(std::int64_t n, PlanPtr child);
PlanPtr make_distinct(PlanPtr child);
// Children must have been projected to the same column list.
PlanPtr make_union_all(std::vector<PlanPtr> children);

PlanPtr clone_plan(const PlanNode& plan);

// Number of Scan leaves in the tree.
std::size_t count_scans(const PlanNode& plan);

}  // namespace rosi
