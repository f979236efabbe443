#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rosi/executor.hpp"
#include "rosi/parser.hpp"
#include "rosi/planner.hpp"
#include "rosi/snapshot.hpp"
#include "rosi/urm.hpp"
#include "support/checks.hpp"
#include "support/fixture_f1.hpp"
#include "support/naive_interp.hpp"
#include "support/random_gen.hpp"
#include "support/temp_dir.hpp"
#include "support/window_oracle.hpp"

using namespace rosi;
using rosi::testing::capture_error;
using rosi::testing::f1_catalog;
using rosi::testing::f1_relations;

namespace {

std::vector<std::vector<std::string>> member_lists(const std::vector<Connection>& connections) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : connections) out.push_back(c.relations);
    return out;
}

// F1 data behind a fixture provider set, for window execution.
struct F1Fixture {
    testing::TempDir dir{"urm_f1"};
    Catalog catalog;
    ProviderSet providers;

    F1Fixture() {
        save_snapshot(testing::f1_relation_list(), dir.path());
        auto loaded = load_snapshot(dir.path());
        catalog = std::move(loaded.first);
        providers = std::move(loaded.second);
    }
};

std::set<std::vector<std::string>> window_rows(const Relation& rel) {
    std::set<std::vector<std::string>> out;
    for (const Tuple& t : rel.tuples) {
        std::vector<std::string> row;
        for (std::size_t i = 0; i < t.size(); ++i) {
            row.push_back(t[i].is_null() ? "<null>" : encode_field(t[i]));
        }
        out.insert(row);
    }
    return out;
}

}  // namespace

TEST_CASE("connection graph mirrors the catalog") {
    Catalog catalog = f1_catalog();
    Hypergraph graph = connection_graph(catalog);
    CHECK(graph.edges.size() == 5);
    CHECK(graph.nodes.size() == catalog.attribute_registry().size());
    CHECK(graph.edges.at("users") ==
          std::set<std::string>{"uid", "username", "home_dir", "shell"});
    // uid appears in exactly its three home relations.
    int uid_homes = 0;
    for (const auto& [name, attrs] : graph.edges) {
        (void)name;
        if (attrs.count("uid")) ++uid_homes;
    }
    CHECK(uid_homes == 3);

    Catalog empty;
    Hypergraph none = connection_graph(empty);
    CHECK(none.nodes.empty());
    CHECK(none.edges.empty());
}

TEST_CASE("minimal connections on the running example") {
    Catalog catalog = f1_catalog();

    CHECK(member_lists(minimal_connections({"username", "command"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"processes", "users"}});

    CHECK(member_lists(minimal_connections({"username", "file_name"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"files", "users"}});

    CHECK(member_lists(minimal_connections({"shell"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"users"}});

    CHECK(member_lists(minimal_connections({"device", "username"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"io_requests", "processes", "users"}});

    // path lives in both files and open_files: two minimal covers, ordered by
    // size then name.
    CHECK(member_lists(minimal_connections({"username", "path"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"files", "users"},
                                                {"open_files", "processes", "users"}});
}

TEST_CASE("inference errors") {
    Catalog catalog = f1_catalog();
    Error unknown = capture_error([&] { minimal_connections({"ghost"}, catalog); });
    CHECK(unknown.code() == ErrorCode::UnknownAttribute);
    CHECK(std::string(unknown.what()) == "unknown attribute 'ghost'");

    Catalog islands;
    islands.register_relation({"a", {{"x", AttrType::Int}, {"y", AttrType::Int}}, {"x"}});
    islands.register_relation({"b", {{"z", AttrType::Int}}, {"z"}});
    Error none = capture_error([&] { minimal_connections({"x", "z"}, islands); });
    CHECK(none.code() == ErrorCode::NoConnection);
    CHECK(std::string(none.what()) == "no connected cover for attributes: x, z");
}

TEST_CASE("inference is capped at sixteen relations") {
    Catalog wide;
    for (int i = 0; i < 17; ++i) {
        std::string suffix = std::to_string(i);
        wide.register_relation({"r" + suffix,
                                {{"a" + suffix, AttrType::Int}},
                                {"a" + suffix}});
    }
    Error e = capture_error([&] { minimal_connections({"a0"}, wide); });
    CHECK(e.code() == ErrorCode::CatalogTooLargeForInference);
    CHECK(std::string(e.what()) == "catalog has 17 relations; FROM-less inference is capped at 16");

    // Sixteen is still fine.
    Catalog at_cap;
    for (int i = 0; i < 16; ++i) {
        std::string suffix = std::to_string(i);
        at_cap.register_relation({"r" + suffix,
                                  {{"a" + suffix, AttrType::Int}},
                                  {"a" + suffix}});
    }
    CHECK(minimal_connections({"a3"}, at_cap).size() == 1);
}

TEST_CASE("maximal objects restrict the search space") {
    Catalog catalog = f1_catalog();
    catalog.register_maximal_object("proc_view", {"users", "processes"});

    // Still fine: the cover lies inside the object.
    CHECK(member_lists(minimal_connections({"username", "command"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"processes", "users"}});

    // files is outside every object now, so no allowed cover exists.
    Error e = capture_error([&] { minimal_connections({"username", "file_name"}, catalog); });
    CHECK(e.code() == ErrorCode::NoConnection);
}

TEST_CASE("maximal objects prune alternative covers") {
    Catalog catalog = f1_catalog();
    catalog.register_maximal_object("file_view", {"users", "files"});
    // Without objects {username, path} has two covers; the object keeps only
    // the files route.
    CHECK(member_lists(minimal_connections({"username", "path"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"files", "users"}});
}

TEST_CASE("overlapping objects deduplicate covers") {
    Catalog catalog = f1_catalog();
    catalog.register_maximal_object("view_a", {"users", "processes", "files"});
    catalog.register_maximal_object("view_b", {"users", "processes", "io_requests"});
    // {users, processes} ⊆ both objects, but comes back once.
    CHECK(member_lists(minimal_connections({"username", "command"}, catalog)) ==
          std::vector<std::vector<std::string>>{{"processes", "users"}});
}

TEST_CASE("minimality: no qualifying cover contains another") {
    Catalog catalog = f1_catalog();
    const std::set<std::string> queries[] = {
        {"username"}, {"pid"}, {"username", "command"}, {"device", "username"},
        {"username", "path"}, {"uid", "op"}, {"file_name", "shell"},
    };
    for (const auto& attrs : queries) {
        auto connections = minimal_connections(attrs, catalog);
        REQUIRE(!connections.empty());
        for (const auto& a : connections) {
            for (const auto& b : connections) {
                if (&a == &b) continue;
                CHECK_FALSE(std::includes(b.relations.begin(), b.relations.end(),
                                          a.relations.begin(), a.relations.end()));
            }
        }
        // Dropping any member breaks coverage or connectivity.
        for (const auto& connection : connections) {
            for (const auto& dropped : connection.relations) {
                std::set<std::string> rest(connection.relations.begin(),
                                           connection.relations.end());
                rest.erase(dropped);
                if (rest.empty()) continue;
                bool covers = true;
                for (const auto& attr : attrs) {
                    bool found = false;
                    for (const auto& member : rest) {
                        if (catalog.relation(member).has_attribute(attr)) found = true;
                    }
                    if (!found) covers = false;
                }
                CHECK((!covers || !relations_connected(catalog, rest)));
            }
        }
    }
}

TEST_CASE("minimal connections agree with the exhaustive oracle") {
    Catalog catalog = f1_catalog();
    const std::set<std::string> queries[] = {
        {"username"}, {"username", "command"}, {"username", "file_name"},
        {"device", "username"}, {"username", "path"}, {"pid", "uid"},
        {"request_id", "shell"}, {"fd", "home_dir"},
    };
    for (const auto& attrs : queries) {
        auto got = member_lists(minimal_connections(attrs, catalog));
        auto want = testing::oracle_minimal_connections(attrs, catalog);
        CHECK(got == want);
    }
}

TEST_CASE("randomized catalogs: inference matches the oracle") {
    testing::QueryGen gen(90210);
    int agreements = 0;
    for (int round = 0; round < 150; ++round) {
        testing::RandomCatalog rc = gen.mini_catalog();
        std::vector<std::string> attrs = gen.window_attrs(rc.catalog);
        std::set<std::string> attr_set(attrs.begin(), attrs.end());
        auto want = testing::oracle_minimal_connections(attr_set, rc.catalog);
        if (want.empty()) {
            Error e = capture_error([&] { minimal_connections(attr_set, rc.catalog); });
            CHECK(e.code() == ErrorCode::NoConnection);
        } else {
            CHECK(member_lists(minimal_connections(attr_set, rc.catalog)) == want);
        }
        ++agreements;
    }
    CHECK(agreements == 150);
}

TEST_CASE("window plan golden for the running example") {
    Catalog catalog = f1_catalog();
    PlanPtr plan = build_window_plan({"username", "file_name"}, nullptr, catalog);
    CHECK(explain(*plan) ==
          "Distinct\n"
          "  UnionAll\n"
          "    Project username, file_name\n"
          "      NaturalJoin\n"
          "        Scan files\n"
          "        Scan users");
}

TEST_CASE("window results over the running example") {
    F1Fixture fx;
    Diagnostics diag;

    Relation active = window_query({"username", "command"},
                                   parse_query("SELECT x WHERE state = 'R'").where, fx.catalog,
                                   fx.providers, diag);
    CHECK(window_rows(active) == std::set<std::vector<std::string>>{{"\"ana\"", "\"vim\""}});

    Relation owners =
        window_query({"username", "file_name"}, nullptr, fx.catalog, fx.providers, diag);
    CHECK(window_rows(owners) == std::set<std::vector<std::string>>{
                                     {"\"ana\"", "\"notes.txt\""}, {"\"root\"", "\"secret\""}});

    Relation readers = window_query({"username"}, parse_query("SELECT x WHERE op = 'read'").where,
                                    fx.catalog, fx.providers, diag);
    CHECK(window_rows(readers) == std::set<std::vector<std::string>>{{"\"ana\""}});

    CHECK(diag.warnings.empty());
}

TEST_CASE("window results are sets even for single-home attributes") {
    F1Fixture fx;
    Diagnostics diag;
    // Three processes but only two distinct states.
    Relation states = window_query({"state"}, nullptr, fx.catalog, fx.providers, diag);
    CHECK(states.tuples.size() == 2);
    CHECK(window_rows(states) == std::set<std::vector<std::string>>{{"\"R\""}, {"\"S\""}});
}

TEST_CASE("single-home degeneration equals scan-filter-project") {
    F1Fixture fx;
    Diagnostics diag;
    ExprPtr predicate = parse_query("SELECT x WHERE rss_bytes > 600").where;
    Relation window = window_query({"command"}, predicate, fx.catalog, fx.providers, diag);

    // Reference: DISTINCT(project(filter(processes))).
    Relation processes = f1_relations().at("processes");
    std::set<std::string> expected;
    for (const Tuple& t : processes.tuples) {
        if (testing::naive_eval(*predicate, t, processes.schema) == TruthValue::True) {
            expected.insert(t[3].as_text());
        }
    }
    std::set<std::string> got;
    for (const Tuple& t : window.tuples) got.insert(t[0].as_text());
    CHECK(got == expected);
    CHECK(got == std::set<std::string>{"init", "vim"});
}

TEST_CASE("explicit FROM agrees with inference when the cover is unique") {
    F1Fixture fx;
    Diagnostics diag;
    ExprPtr predicate = parse_query("SELECT x WHERE state = 'R'").where;

    Relation window =
        window_query({"username", "command"}, predicate, fx.catalog, fx.providers, diag);

    SelectStmt stmt =
        parse_query("SELECT DISTINCT username, command FROM users, processes WHERE state = 'R'");
    PlanPtr plan = plan_query(stmt, fx.catalog);
    Relation explicit_result = execute(*plan, fx.providers, diag);

    CHECK(window_rows(window) == window_rows(explicit_result));
}

TEST_CASE("randomized window queries match the brute-force oracle") {
    testing::QueryGen gen(5150);
    int compared = 0;
    for (int round = 0; round < 60; ++round) {
        testing::RandomCatalog rc = gen.mini_catalog();
        testing::TempDir dir("urm_rand");
        save_snapshot(testing::relation_list(rc.data), dir.path());
        ProviderSet providers = ProviderSet::fixture(dir.path());

        for (int q = 0; q < 3; ++q) {
            std::vector<std::string> attrs = gen.window_attrs(rc.catalog);
            ExprPtr predicate = gen.maybe_predicate(rc.catalog);
            std::set<std::string> attr_set(attrs.begin(), attrs.end());

            testing::OracleWindow want = testing::oracle_window(attrs, predicate, rc.catalog,
                                                                rc.data);
            if (want.no_connection) {
                Error e = capture_error([&] {
                    Diagnostics diag;
                    window_query(attrs, predicate, rc.catalog, providers, diag);
                });
                CHECK(e.code() == ErrorCode::NoConnection);
            } else {
                Diagnostics diag;
                Relation got = window_query(attrs, predicate, rc.catalog, providers, diag);
                CHECK(testing::bags_equal(got, want.result));
            }
            ++compared;
        }
    }
    CHECK(compared == 180);
}
