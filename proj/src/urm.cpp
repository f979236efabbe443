#include "rosi/urm.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rosi/error.hpp"
#include "rosi/executor.hpp"
#include "rosi/planner.hpp"

namespace rosi {

namespace {

constexpr std::size_t kMaxInferenceRelations = 16;

bool sets_intersect(const std::set<std::string>& a, const std::set<std::string>& b) {
    auto it_a = a.begin();
    auto it_b = b.begin();
    while (it_a != a.end() && it_b != b.end()) {
        if (*it_a < *it_b) ++it_a;
        else if (*it_b < *it_a) ++it_b;
        else return true;
    }
    return false;
}

// Connectivity of the member set under the shared-attribute relation.
bool mask_connected(std::uint32_t mask, const std::vector<std::set<std::string>>& attr_sets) {
    if (mask == 0) return false;
    std::uint32_t seed = mask & (~mask + 1);
    std::uint32_t reached = seed;
    std::uint32_t frontier = seed;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t i = 0; i < attr_sets.size(); ++i) {
            std::uint32_t bit = 1u << i;
            if (!(mask & bit) || (reached & bit)) continue;
            for (std::uint32_t j = 0; j < attr_sets.size(); ++j) {
                if (!(frontier & (1u << j))) continue;
                if (sets_intersect(attr_sets[i], attr_sets[j])) {
                    next |= bit;
                    break;
                }
            }
        }
        reached |= next;
        frontier = next;
    }
    return reached == mask;
}

bool mask_covers(std::uint32_t mask, const std::set<std::string>& attrs,
                 const std::vector<std::set<std::string>>& attr_sets) {
    for (const auto& attr : attrs) {
        bool found = false;
        for (std::uint32_t i = 0; i < attr_sets.size() && !found; ++i) {
            if ((mask & (1u << i)) && attr_sets[i].count(attr)) found = true;
        }
        if (!found) return false;
    }
    return true;
}

// Deterministic left-deep join order inside one cover: lexicographically
// smallest member seeds the tree; each step appends the smallest remaining
// member that shares an attribute with what is already joined.
PlanPtr build_cover_join(const Connection& connection, const Catalog& catalog) {
    std::vector<std::string> remaining = connection.relations;
    std::string seed = remaining.front();
    remaining.erase(remaining.begin());

    PlanPtr tree = make_scan(catalog.relation(seed));
    std::set<std::string> joined_attrs = catalog.relation(seed).attribute_names();
    while (!remaining.empty()) {
        auto pick = remaining.end();
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            if (sets_intersect(joined_attrs, catalog.relation(*it).attribute_names())) {
                pick = it;
                break;
            }
        }
        if (pick == remaining.end()) {
            throw std::logic_error("build_cover_join: cover is not connected");
        }
        const RelationSchema& schema = catalog.relation(*pick);
        tree = make_natural_join(std::move(tree), make_scan(schema));
        for (const auto& attr : schema.attribute_names()) joined_attrs.insert(attr);
        remaining.erase(pick);
    }
    return tree;
}

}  // namespace

Hypergraph connection_graph(const Catalog& catalog) {
    Hypergraph graph;
    for (const auto& [attr, type] : catalog.attribute_registry()) {
        (void)type;
        graph.nodes.insert(attr);
    }
    for (const auto& [name, schema] : catalog.relations()) {
        graph.edges[name] = schema.attribute_names();
    }
    return graph;
}

std::vector<Connection> minimal_connections(const std::set<std::string>& attrs,
                                            const Catalog& catalog) {
    const auto& relations = catalog.relations();
    if (relations.size() > kMaxInferenceRelations) {
        throw Error(ErrorCode::CatalogTooLargeForInference,
                    "catalog has " + std::to_string(relations.size()) +
                        " relations; FROM-less inference is capped at " +
                        std::to_string(kMaxInferenceRelations));
    }
    for (const auto& attr : attrs) {
        if (!catalog.attribute_registry().count(attr)) {
            throw Error(ErrorCode::UnknownAttribute, "unknown attribute '" + attr + "'");
        }
    }

    std::vector<std::string> names;
    std::vector<std::set<std::string>> attr_sets;
    for (const auto& [name, schema] : relations) {
        names.push_back(name);
        attr_sets.push_back(schema.attribute_names());
    }
    std::size_t n = names.size();

    // Candidate masks: every nonempty subset, or — when maximal objects are
    // declared — every nonempty subset of a single object's members.
    std::set<std::uint32_t> candidates;
    if (catalog.maximal_objects().empty()) {
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) candidates.insert(mask);
    } else {
        for (const auto& [obj_name, object] : catalog.maximal_objects()) {
            (void)obj_name;
            std::uint32_t object_mask = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (object.members.count(names[i])) object_mask |= 1u << i;
            }
            for (std::uint32_t sub = object_mask; sub; sub = (sub - 1) & object_mask) {
                candidates.insert(sub);
            }
        }
    }

    std::vector<std::uint32_t> qualifying;
    for (std::uint32_t mask : candidates) {
        if (mask_covers(mask, attrs, attr_sets) && mask_connected(mask, attr_sets)) {
            qualifying.push_back(mask);
        }
    }

    std::vector<std::uint32_t> minimal;
    for (std::uint32_t mask : qualifying) {
        bool has_proper_subset = false;
        for (std::uint32_t other : qualifying) {
            if (other != mask && (other & mask) == other) {
                has_proper_subset = true;
                break;
            }
        }
        if (!has_proper_subset) minimal.push_back(mask);
    }
    if (minimal.empty()) {
        std::string list;
        for (const auto& attr : attrs) {
            if (!list.empty()) list += ", ";
            list += attr;
        }
        throw Error(ErrorCode::NoConnection, "no connected cover for attributes: " + list);
    }

    std::vector<Connection> connections;
    for (std::uint32_t mask : minimal) {
        Connection c;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) c.relations.push_back(names[i]);
        }
        connections.push_back(std::move(c));
    }
    std::sort(connections.begin(), connections.end(),
              [](const Connection& a, const Connection& b) {
                  if (a.relations.size() != b.relations.size()) {
                      return a.relations.size() < b.relations.size();
                  }
                  return a.relations < b.relations;
              });
    return connections;
}

PlanPtr build_window_plan(const std::vector<std::string>& attrs, ExprPtr predicate,
                          const Catalog& catalog) {
    std::set<std::string> inference_attrs(attrs.begin(), attrs.end());
    if (predicate) {
        for (const auto& column : collect_columns(*predicate)) inference_attrs.insert(column);
    }

    std::vector<Connection> connections = minimal_connections(inference_attrs, catalog);
    std::vector<PlanPtr> branches;
    for (const auto& connection : connections) {
        PlanPtr tree = build_cover_join(connection, catalog);
        if (predicate) tree = make_filter(predicate, std::move(tree));
        branches.push_back(make_project(attrs, std::move(tree)));
    }
    return make_distinct(make_union_all(std::move(branches)));
}

Relation window_query(const std::vector<std::string>& attrs, ExprPtr predicate,
                      const Catalog& catalog, const ProviderSet& providers, Diagnostics& diag) {
    PlanPtr plan = push_down_predicates(build_window_plan(attrs, std::move(predicate), catalog));
    return execute(*plan, providers, diag);
}

}  // namespace rosi
