#pragma once

#include <string>

#include "rosi/ast.hpp"
#include "rosi/catalog.hpp"
#include "rosi/plan.hpp"

namespace rosi {

// Compiles a parsed statement against the catalog. An explicit FROM list of k
// relations becomes a left-deep natural-join chain in FROM order (cross
// products are rejected); a FROM-less statement compiles to the
// universal-relation window plan: a DISTINCT over the UNION ALL of one join
// plan per inclusion-minimal connected cover. Performs all semantic checks
// (UnknownRelation, UnknownColumn, TypeMismatch, AmbiguityUnsupported,
// NoConnection, UnknownAttribute).
PlanPtr plan_query(const SelectStmt& stmt, const Catalog& catalog);

// Moves filter conjuncts into every scan whose schema contains all of the
// conjunct's columns (equality on a shared join attribute lands in both
// sides); conjuncts containing OR stay put, except that a filter directly
// over a single scan is absorbed whole. Semantics-preserving.
PlanPtr push_down_predicates(PlanPtr plan);

// One node per line, two-space indentation per depth. Scan lines show the
// relation name and any pushed predicate.
std::string explain(const PlanNode& plan);

}  // namespace rosi
