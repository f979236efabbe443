#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rosi/ast.hpp"
#include "rosi/catalog.hpp"
#include "rosi/relation.hpp"

namespace rosi {

// Per-call warning channel. Warnings never contaminate result data; the CLI
// routes them to the diagnostic stream.
struct Diagnostics {
    std::vector<std::string> warnings;
    std::map<std::string, std::int64_t> counters;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
    void count(const std::string& key, std::int64_t delta = 1) { counters[key] += delta; }
};

enum class ProviderMode { Live, Fixture };

// Built-in schemas of the five virtual relations.
const std::vector<RelationSchema>& builtin_schemas();

// Catalog holding exactly the built-in schemas.
Catalog default_catalog();

struct LiveConfig {
    // Scope of the files provider; walks never leave it or follow symlinks.
    std::filesystem::path files_root = ".";
    // OS introspection roots, overridable for hosts mounted at alternate
    // paths (and for hermetic tests).
    std::filesystem::path proc_root = "/proc";
    std::filesystem::path passwd_path = "/etc/passwd";
    // Directory-walk cap; exceeding it truncates with a warning.
    std::size_t walk_limit = 100000;
};

// Named sources of point-in-time relation snapshots: live OS adapters or a
// fixture directory of .rel files. Stateless between calls; snapshots are
// immutable. Fixture mode never touches live OS state.
class ProviderSet {
public:
    // Live mode over default configuration; use the factories for anything
    // real.
    ProviderSet() = default;

    static ProviderSet live(LiveConfig config);
    static ProviderSet fixture(std::filesystem::path fixture_dir);

    ProviderMode mode() const { return mode_; }
    const LiveConfig& live_config() const { return live_; }
    const std::filesystem::path& fixture_dir() const { return fixture_dir_; }

    // Live mode: the built-in schemas. Fixture mode: schemas parsed from the
    // directory's .rel headers (throws FixtureReadError on malformed or
    // URA-conflicting headers).
    std::vector<RelationSchema> list_relations() const;

    // Takes a snapshot, applying `pushed` (may be null) so that the result
    // equals filtering an unpredicated snapshot taken at the same instant.
    // The files provider additionally prunes directory descent when the
    // predicate constrains `dir` or `path` by equality or a LIKE literal
    // prefix. Throws UnknownRelation or ProviderUnavailable.
    Relation snapshot(const std::string& name, const Expr* pushed, Diagnostics& diag) const;

private:
    ProviderMode mode_ = ProviderMode::Live;
    LiveConfig live_;
    std::filesystem::path fixture_dir_;
};

// Keeps only tuples for which `pushed` evaluates to True; identity when
// `pushed` is null. Shared post-filter of every provider.
void apply_pushed_predicate(Relation& relation, const Expr* pushed);

}  // namespace rosi
