#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rosi/ast.hpp"
#include "rosi/catalog.hpp"
#include "rosi/plan.hpp"
#include "rosi/providers.hpp"
#include "rosi/relation.hpp"

namespace rosi {

// Relation/attribute incidence structure: one hyperedge per relation, over
// the attribute universe.
struct Hypergraph {
    std::set<std::string> nodes;
    std::map<std::string, std::set<std::string>> edges;
};

Hypergraph connection_graph(const Catalog& catalog);

// A set of relations that together contain all queried attributes and are
// linked pairwise-transitively by shared attribute names, with no proper
// subset having both properties.
struct Connection {
    std::vector<std::string> relations;  // sorted member names

    friend bool operator==(const Connection&, const Connection&) = default;
};

// Enumerates the inclusion-minimal connected covers of `attrs`, ordered by
// increasing cardinality then lexicographic member names. When maximal
// objects are declared the search space is restricted to subsets of a single
// object's members (covers deduplicated across overlapping objects). Throws
// UnknownAttribute, NoConnection, or CatalogTooLargeForInference (catalogs
// beyond 16 relations).
std::vector<Connection> minimal_connections(const std::set<std::string>& attrs,
                                            const Catalog& catalog);

// The window plan for an attribute list: DISTINCT over the UNION ALL of, per
// cover, project(attrs, filter(predicate, natural join of the members)).
// Predicate attributes join the inference set; join order within a cover is
// deterministic (lexicographic seed, then smallest attribute-sharing member,
// left-deep).
PlanPtr build_window_plan(const std::vector<std::string>& attrs, ExprPtr predicate,
                          const Catalog& catalog);

// Executes the window plan (with predicate pushdown). The result is a set,
// never a bag. Provider failures inside one connection degrade it to empty
// with a warning; other connections still contribute.
Relation window_query(const std::vector<std::string>& attrs, ExprPtr predicate,
                      const Catalog& catalog, const ProviderSet& providers, Diagnostics& diag);

}  // namespace rosi
