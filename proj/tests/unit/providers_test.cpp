#include <doctest.h>

#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosi/eval.hpp"
#include "rosi/parser.hpp"
#include "rosi/providers.hpp"
#include "rosi/snapshot.hpp"
#include "support/checks.hpp"
#include "support/fixture_f1.hpp"
#include "support/naive_interp.hpp"
#include "support/random_gen.hpp"
#include "support/temp_dir.hpp"

using namespace rosi;
using rosi::testing::bags_equal;
using rosi::testing::capture_error;
using rosi::testing::f1_relation;
using rosi::testing::naive_eval;
using rosi::testing::QueryGen;
using rosi::testing::source_path;
using rosi::testing::TempDir;

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    REQUIRE(out.good());
}

// Parses the predicate text via a throwaway FROM-less query.
ExprPtr parse_pred(const std::string& text) {
    SelectStmt stmt = parse_query("SELECT x WHERE " + text);
    REQUIRE(stmt.where != nullptr);
    return std::move(stmt.where);
}

Relation snap(const ProviderSet& providers, const std::string& name,
              const Expr* pushed = nullptr) {
    Diagnostics diag;
    return providers.snapshot(name, pushed, diag);
}

Relation naive_filter(Relation rel, const Expr& pred) {
    std::vector<Tuple> kept;
    for (auto& tuple : rel.tuples) {
        if (naive_eval(pred, tuple, rel.schema) == TruthValue::True) {
            kept.push_back(std::move(tuple));
        }
    }
    rel.tuples = std::move(kept);
    return rel;
}

std::vector<std::string> schema_names(const std::vector<RelationSchema>& schemas) {
    std::vector<std::string> names;
    for (const auto& s : schemas) names.push_back(s.name);
    return names;
}

std::vector<std::string> attr_names(const RelationSchema& schema) {
    std::vector<std::string> names;
    for (const auto& attr : schema.attributes) names.push_back(attr.name);
    return names;
}

std::size_t column_index(const Relation& rel, const std::string& attr) {
    std::size_t index = rel.schema.index_of(attr);
    REQUIRE(index != RelationSchema::npos);
    return index;
}

std::vector<std::string> column_texts(const Relation& rel, const std::string& attr) {
    std::size_t index = column_index(rel, attr);
    std::vector<std::string> out;
    for (const Tuple& t : rel.tuples) {
        out.push_back(t[index].is_null() ? "<null>" : t[index].as_text());
    }
    return out;
}

std::vector<std::int64_t> column_ints(const Relation& rel, const std::string& attr) {
    std::size_t index = column_index(rel, attr);
    std::vector<std::int64_t> out;
    for (const Tuple& t : rel.tuples) out.push_back(t[index].as_int());
    return out;
}

const Tuple& row_where_int(const Relation& rel, const std::string& attr, std::int64_t want) {
    std::size_t index = column_index(rel, attr);
    for (const Tuple& t : rel.tuples) {
        if (!t[index].is_null() && t[index].as_int() == want) return t;
    }
    FAIL("no row with ", attr, " = ", want);
    throw std::logic_error("unreachable");
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in schemas and the default catalog.

TEST_CASE("builtin schemas describe the five virtual relations") {
    const auto& schemas = builtin_schemas();
    REQUIRE(schemas.size() == 5);
    CHECK(schema_names(schemas) ==
          std::vector<std::string>{"users", "processes", "files", "open_files", "io_requests"});

    const RelationSchema& users = schemas[0];
    CHECK(attr_names(users) == (std::vector<std::string>{"uid", "username", "home_dir", "shell"}));
    CHECK(users.key == std::vector<std::string>{"uid"});
    CHECK(users.attributes[0].type == AttrType::Int);
    CHECK(users.attributes[1].type == AttrType::Text);

    CHECK(schemas[1].key == std::vector<std::string>{"pid"});
    CHECK(schemas[2].key == std::vector<std::string>{"path"});
    CHECK(schemas[3].key == (std::vector<std::string>{"pid", "fd"}));
    CHECK(schemas[4].key == std::vector<std::string>{"request_id"});

    for (const auto& schema : schemas) CHECK_NOTHROW(schema.validate());
}

TEST_CASE("default catalog registers every builtin relation") {
    Catalog catalog = default_catalog();
    CHECK(catalog.relations().size() == 5);
    for (const auto& schema : builtin_schemas()) {
        CHECK(catalog.find_relation(schema.name) != nullptr);
    }
    // uid is the shared attribute tying accounts to processes and files.
    CHECK(catalog.attribute_homes("uid") ==
          (std::set<std::string>{"users", "processes", "files"}));
}

// ---------------------------------------------------------------------------
// Fixture mode.

TEST_CASE("fixture snapshots read committed relation files") {
    ProviderSet providers = ProviderSet::fixture(source_path("fixtures/f1"));
    CHECK(providers.mode() == ProviderMode::Fixture);

    Relation users = snap(providers, "users");
    CHECK(users.schema.name == "users");
    CHECK(users.schema.key == std::vector<std::string>{"uid"});
    CHECK(bags_equal(users, f1_relation("users")));

    Relation io = snap(providers, "io_requests");
    CHECK(bags_equal(io, f1_relation("io_requests")));
}

TEST_CASE("fixture snapshot applies the pushed predicate exactly") {
    ProviderSet providers = ProviderSet::fixture(source_path("fixtures/f1"));

    ExprPtr by_uid = parse_pred("uid = 1000");
    Relation anas = snap(providers, "processes", by_uid.get());
    std::vector<std::int64_t> pids = column_ints(anas, "pid");
    std::sort(pids.begin(), pids.end());
    CHECK(pids == (std::vector<std::int64_t>{42, 43}));

    // Disjunctions and NULL-valued attributes go through the same filter.
    ExprPtr mixed = parse_pred("rss_bytes > 4000000 OR state = 'S'");
    Relation got = snap(providers, "processes", mixed.get());
    Relation want = naive_filter(snap(providers, "processes"), *mixed);
    CHECK(bags_equal(got, want));
}

TEST_CASE("fixture pushdown equals filter-after-snapshot on random predicates") {
    ProviderSet providers = ProviderSet::fixture(source_path("fixtures/f1"));
    Catalog catalog = testing::f1_catalog();

    int checked = 0;
    for (const auto& [name, schema] : catalog.relations()) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            QueryGen gen(seed * 31 + 7);
            ExprPtr pred = gen.predicate(schema.attributes, 2);
            REQUIRE(pred != nullptr);
            Relation pushed = snap(providers, name, pred.get());
            Relation plain = naive_filter(snap(providers, name), *pred);
            if (!bags_equal(pushed, plain)) {
                FAIL_CHECK("pushdown mismatch on ", name, " seed ", seed);
            }
            ++checked;
        }
    }
    CHECK(checked == 200);
}

TEST_CASE("fixture snapshots are deterministic") {
    ProviderSet providers = ProviderSet::fixture(source_path("fixtures/f1"));
    for (const std::string name : {"users", "processes", "files"}) {
        CHECK(encode_relation(snap(providers, name)) == encode_relation(snap(providers, name)));
    }
}

TEST_CASE("unknown fixture relation names the missing file") {
    TempDir dir("fixempty");
    ProviderSet providers = ProviderSet::fixture(dir.path());
    Error err = capture_error([&] { snap(providers, "ghost"); });
    CHECK(err.code() == ErrorCode::UnknownRelation);
    CHECK(std::string(err.what()) ==
          "unknown relation 'ghost' (no " + (dir.path() / "ghost.rel").string() + ")");
}

TEST_CASE("live mode rejects unknown relation names without touching the host") {
    ProviderSet providers = ProviderSet::live(LiveConfig{});
    Error err = capture_error([&] { snap(providers, "ghost"); });
    CHECK(err.code() == ErrorCode::UnknownRelation);
    CHECK(std::string(err.what()) == "unknown relation 'ghost'");
}

TEST_CASE("list_relations reports the builtins in live mode") {
    ProviderSet providers = ProviderSet::live(LiveConfig{});
    std::vector<RelationSchema> listed = providers.list_relations();
    CHECK(schema_names(listed) == schema_names(builtin_schemas()));
    CHECK(listed[1].attributes.size() == 7);
}

TEST_CASE("list_relations parses fixture headers") {
    TempDir dir("fixlist");
    write_file(dir.path() / "alpha.rel", "x:INT,y:TEXT\n");
    write_file(dir.path() / "beta.rel", "y:TEXT\n");
    write_file(dir.path() / "README.txt", "not a relation\n");

    ProviderSet providers = ProviderSet::fixture(dir.path());
    std::vector<RelationSchema> listed = providers.list_relations();
    CHECK(schema_names(listed) == (std::vector<std::string>{"alpha", "beta"}));
    CHECK(attr_names(listed[0]) == (std::vector<std::string>{"x", "y"}));
    // Loaded relations are keyed by their full attribute list.
    CHECK(listed[0].key == (std::vector<std::string>{"x", "y"}));
}

TEST_CASE("list_relations surfaces fixture problems as FixtureReadError") {
    TempDir conflicting("fixconflict");
    write_file(conflicting.path() / "alpha.rel", "uid:INT\n");
    write_file(conflicting.path() / "beta.rel", "uid:TEXT\n");
    Error conflict =
        capture_error([&] { ProviderSet::fixture(conflicting.path()).list_relations(); });
    CHECK(conflict.code() == ErrorCode::FixtureReadError);
    CHECK(std::string(conflict.what()) ==
          "attribute uid already registered as INT, relation beta declares TEXT");

    TempDir malformed("fixbadhdr");
    write_file(malformed.path() / "bad.rel", "nope\n");
    Error header =
        capture_error([&] { ProviderSet::fixture(malformed.path()).list_relations(); });
    CHECK(header.code() == ErrorCode::FixtureReadError);
    CHECK(std::string(header.what()).find("bad.rel:1:") != std::string::npos);
}

// ---------------------------------------------------------------------------
// Live users.

TEST_CASE("live users parses the account database") {
    TempDir etc("fakeetc");
    write_file(etc.path() / "passwd",
               "root:x:0:0:root:/root:/bin/sh\n"
               "# daemon accounts follow\n"
               "daemon:x:1:1:daemon:/usr/sbin:/usr/sbin/nologin\n"
               "broken:x:notanumber:0:broken:/nowhere:/bin/false\n"
               "short:entry\n"
               "\n"
               "ana:x:1000:1000:Ana:/home/ana:/bin/bash\n");

    LiveConfig config;
    config.passwd_path = etc.path() / "passwd";
    ProviderSet providers = ProviderSet::live(config);

    Diagnostics diag;
    Relation users = providers.snapshot("users", nullptr, diag);
    CHECK(column_ints(users, "uid") == (std::vector<std::int64_t>{0, 1, 1000}));
    CHECK(column_texts(users, "username") == (std::vector<std::string>{"root", "daemon", "ana"}));
    CHECK(column_texts(users, "home_dir") ==
          (std::vector<std::string>{"/root", "/usr/sbin", "/home/ana"}));
    CHECK(column_texts(users, "shell") ==
          (std::vector<std::string>{"/bin/sh", "/usr/sbin/nologin", "/bin/bash"}));
    CHECK(diag.counters.at("users.skipped_entries") == 2);
    CHECK(diag.warnings.empty());
}

TEST_CASE("live users is unavailable without the account database") {
    TempDir etc("fakeetc2");
    LiveConfig config;
    config.passwd_path = etc.path() / "missing";
    Error err = capture_error([&] { snap(ProviderSet::live(config), "users"); });
    CHECK(err.code() == ErrorCode::ProviderUnavailable);
    CHECK(std::string(err.what()) ==
          "user database not readable: " + (etc.path() / "missing").string());
}

// ---------------------------------------------------------------------------
// Live processes.

TEST_CASE("live processes reads the process table") {
    TempDir proc("fakeproc1");
    write_file(proc.path() / "stat", "cpu  100 0 100 1000\nbtime 1000\n");
    write_file(proc.path() / "1" / "stat",
               "1 (init) S 0 1 1 0 -1 4194560 100 0 0 0 5 5 0 0 20 0 1 0 250 10000000 300\n");
    write_file(proc.path() / "1" / "status", "Name:\tinit\nUid:\t1234\t1234\t1234\t1234\n");
    // comm may contain spaces and parentheses; everything up to the LAST ')'
    // belongs to it.
    write_file(proc.path() / "42" / "stat",
               "42 (my (weird) app) R 1 42 42 0 -1 4194560 7 0 0 0 9 9 0 0 20 0 1 0 500 2000000 "
               "200\n");
    write_file(proc.path() / "77" / "stat", "garbage with no parens\n");
    fs::create_directories(proc.path() / "999");  // present but no stat file
    write_file(proc.path() / "self" / "stat", "ignored: not a numeric entry\n");

    LiveConfig config;
    config.proc_root = proc.path();
    Diagnostics diag;
    Relation processes = ProviderSet::live(config).snapshot("processes", nullptr, diag);

    // Rows come out in ascending pid order; the two bad entries are skipped.
    CHECK(column_ints(processes, "pid") == (std::vector<std::int64_t>{1, 42}));
    CHECK(diag.counters.at("processes.skipped_entries") == 2);

    long ticks = ::sysconf(_SC_CLK_TCK);
    long page = ::sysconf(_SC_PAGESIZE);
    REQUIRE(ticks > 0);
    REQUIRE(page > 0);

    const Tuple& init = row_where_int(processes, "pid", 1);
    auto col = [&](const char* name) { return column_index(processes, name); };
    CHECK(init[col("command")] == Value::text("init"));
    CHECK(init[col("state")] == Value::text("S"));
    CHECK(init[col("ppid")] == Value::integer(0));
    CHECK(init[col("uid")] == Value::integer(1234));
    CHECK(init[col("rss_bytes")] == Value::integer(300 * page));
    CHECK(init[col("started_at")] == Value::timestamp(1000 + 250 / ticks));

    const Tuple& weird = row_where_int(processes, "pid", 42);
    CHECK(weird[col("command")] == Value::text("my (weird) app"));
    CHECK(weird[col("state")] == Value::text("R"));
    CHECK(weird[col("ppid")] == Value::integer(1));
    // No status file: ownership falls back to the directory owner.
    CHECK(weird[col("uid")] == Value::integer(static_cast<std::int64_t>(::getuid())));
    CHECK(weird[col("rss_bytes")] == Value::integer(200 * page));
    CHECK(weird[col("started_at")] == Value::timestamp(1000 + 500 / ticks));
}

TEST_CASE("live processes leaves missing measurements NULL") {
    TempDir proc("fakeproc2");
    // No btime file at all, and the stat line stops after ppid.
    write_file(proc.path() / "7" / "stat", "7 (z) Z 1\n");

    LiveConfig config;
    config.proc_root = proc.path();
    Relation processes = snap(ProviderSet::live(config), "processes");
    REQUIRE(processes.tuples.size() == 1);

    const Tuple& zombie = processes.tuples[0];
    auto col = [&](const char* name) { return column_index(processes, name); };
    CHECK(zombie[col("pid")] == Value::integer(7));
    CHECK(zombie[col("command")] == Value::text("z"));
    CHECK(zombie[col("state")] == Value::text("Z"));
    CHECK(zombie[col("ppid")] == Value::integer(1));
    CHECK(zombie[col("rss_bytes")].is_null());
    CHECK(zombie[col("started_at")].is_null());
}

TEST_CASE("live processes is unavailable without a process table") {
    TempDir proc("fakeproc3");
    LiveConfig config;
    config.proc_root = proc.path() / "nothing";
    Error err = capture_error([&] { snap(ProviderSet::live(config), "processes"); });
    CHECK(err.code() == ErrorCode::ProviderUnavailable);
    CHECK(std::string(err.what()) ==
          "process table not readable: " + (proc.path() / "nothing").string());
}

// ---------------------------------------------------------------------------
// Live open_files.

TEST_CASE("live open_files lists descriptor link targets") {
    TempDir proc("fakeproc4");
    TempDir elsewhere("targets");
    fs::path real_target = elsewhere.path() / "log.txt";
    write_file(real_target, "x\n");

    fs::create_directories(proc.path() / "1" / "fd");
    fs::create_symlink(real_target, proc.path() / "1" / "fd" / "0");
    fs::create_symlink(elsewhere.path() / "gone.txt", proc.path() / "1" / "fd" / "2");
    write_file(proc.path() / "1" / "fd" / "5", "a regular file, not a link\n");
    fs::create_symlink(real_target, proc.path() / "1" / "fd" / "notafd");
    fs::create_directories(proc.path() / "42");  // no fd directory

    LiveConfig config;
    config.proc_root = proc.path();
    Diagnostics diag;
    Relation open = ProviderSet::live(config).snapshot("open_files", nullptr, diag);

    CHECK(column_ints(open, "pid") == (std::vector<std::int64_t>{1, 1}));
    CHECK(column_ints(open, "fd") == (std::vector<std::int64_t>{0, 2}));
    // A dangling link still reports what the descriptor pointed at.
    CHECK(column_texts(open, "path") ==
          (std::vector<std::string>{real_target.string(),
                                    (elsewhere.path() / "gone.txt").string()}));
    CHECK(diag.counters.at("open_files.skipped_entries") == 1);
    CHECK(diag.counters.at("open_files.skipped_processes") == 1);
}

// ---------------------------------------------------------------------------
// Live io_requests.

TEST_CASE("live io_requests synthesizes rows from io accounting") {
    TempDir proc("fakeproc5");
    write_file(proc.path() / "1" / "io",
               "rchar: 9000\nwchar: 100\nread_bytes: 4096\nwrite_bytes: 512\n");
    write_file(proc.path() / "42" / "io", "wchar: 5\nwrite_bytes: 512\n");
    fs::create_directories(proc.path() / "77");  // no accounting

    LiveConfig config;
    config.proc_root = proc.path();
    std::int64_t before = static_cast<std::int64_t>(::time(nullptr));
    Diagnostics diag;
    Relation io = ProviderSet::live(config).snapshot("io_requests", nullptr, diag);
    std::int64_t after = static_cast<std::int64_t>(::time(nullptr));

    // pid 1 reports both directions, pid 42 only writes.
    CHECK(column_ints(io, "request_id") == (std::vector<std::int64_t>{1, 2, 3}));
    CHECK(column_ints(io, "pid") == (std::vector<std::int64_t>{1, 1, 42}));
    CHECK(column_texts(io, "op") == (std::vector<std::string>{"read", "write", "write"}));
    CHECK(column_texts(io, "device") ==
          (std::vector<std::string>{"unknown", "unknown", "unknown"}));
    for (const Tuple& t : io.tuples) {
        const Value& queued = t[column_index(io, "queued_at")];
        CHECK(queued.tag() == Value::Tag::Timestamp);
        CHECK(queued.as_int() >= before);
        CHECK(queued.as_int() <= after);
    }
    CHECK(diag.counters.at("io_requests.skipped_processes") == 1);
}

TEST_CASE("live io_requests with no processes yields an empty relation") {
    TempDir proc("fakeproc6");
    write_file(proc.path() / "stat", "btime 1000\n");
    LiveConfig config;
    config.proc_root = proc.path();
    Relation io = snap(ProviderSet::live(config), "io_requests");
    CHECK(io.schema.name == "io_requests");
    CHECK(io.tuples.empty());
}

TEST_CASE("live io_requests is unavailable when no process exposes accounting") {
    TempDir proc("fakeproc7");
    fs::create_directories(proc.path() / "1");
    fs::create_directories(proc.path() / "2");
    LiveConfig config;
    config.proc_root = proc.path();
    Error err = capture_error([&] { snap(ProviderSet::live(config), "io_requests"); });
    CHECK(err.code() == ErrorCode::ProviderUnavailable);
    CHECK(std::string(err.what()) ==
          "per-process I/O accounting not available under " + proc.path().string());
}

// ---------------------------------------------------------------------------
// Live files.

TEST_CASE("live files walks the root deterministically") {
    TempDir root("fwalk1");
    write_file(root.path() / "a.txt", "hello");
    write_file(root.path() / "sub" / "b.bin", "abc");
    write_file(root.path() / "sub" / "c.txt", "");
    fs::create_directories(root.path() / "empty");
    fs::create_symlink(root.path() / "a.txt", root.path() / "link");

    LiveConfig config;
    config.files_root = root.path();
    Diagnostics diag;
    Relation files = ProviderSet::live(config).snapshot("files", nullptr, diag);

    std::string base = root.path().string();
    // Depth-first, name-sorted within each directory; symlinks never appear.
    CHECK(column_texts(files, "path") ==
          (std::vector<std::string>{base + "/a.txt", base + "/sub/b.bin", base + "/sub/c.txt"}));
    CHECK(column_texts(files, "dir") ==
          (std::vector<std::string>{base, base + "/sub", base + "/sub"}));
    CHECK(column_texts(files, "file_name") ==
          (std::vector<std::string>{"a.txt", "b.bin", "c.txt"}));
    CHECK(column_ints(files, "size_bytes") == (std::vector<std::int64_t>{5, 3, 0}));
    CHECK(diag.warnings.empty());

    std::int64_t me = static_cast<std::int64_t>(::getuid());
    for (const Tuple& t : files.tuples) {
        CHECK(t[column_index(files, "uid")] == Value::integer(me));
        const Value& mtime = t[column_index(files, "mtime")];
        CHECK(mtime.tag() == Value::Tag::Timestamp);
        CHECK(mtime.as_int() > 0);
    }

    Relation again = snap(ProviderSet::live(config), "files");
    CHECK(encode_relation(files) == encode_relation(again));
    CHECK(column_texts(again, "path") == column_texts(files, "path"));
}

TEST_CASE("live files root must be a directory") {
    TempDir root("fwalk2");
    write_file(root.path() / "just_a_file", "x");

    LiveConfig config;
    config.files_root = root.path() / "absent";
    Error missing = capture_error([&] { snap(ProviderSet::live(config), "files"); });
    CHECK(missing.code() == ErrorCode::ProviderUnavailable);
    CHECK(std::string(missing.what()) ==
          "files root not accessible: " + (root.path() / "absent").string());

    config.files_root = root.path() / "just_a_file";
    Error file = capture_error([&] { snap(ProviderSet::live(config), "files"); });
    CHECK(file.code() == ErrorCode::ProviderUnavailable);
}

namespace {

// root/heavy/f1..f5 plus root/target/t.txt: enough entries that a capped
// unpruned walk must truncate inside heavy/.
void build_pruning_tree(const fs::path& root) {
    for (int i = 1; i <= 5; ++i) {
        write_file(root / "heavy" / ("f" + std::to_string(i)), "data");
    }
    write_file(root / "target" / "t.txt", "found me");
}

}  // namespace

TEST_CASE("live files honors the walk cap with a warning") {
    TempDir root("fwalk3");
    build_pruning_tree(root.path());

    LiveConfig config;
    config.files_root = root.path();
    config.walk_limit = 3;
    Diagnostics diag;
    Relation files = ProviderSet::live(config).snapshot("files", nullptr, diag);

    // The cap counts visited entries, so the walk dies inside heavy/ and
    // never reaches target/.
    std::string base = root.path().string();
    CHECK(column_texts(files, "path") ==
          (std::vector<std::string>{base + "/heavy/f1", base + "/heavy/f2"}));
    REQUIRE(diag.warnings.size() == 1);
    CHECK(diag.warnings[0] == "WalkTruncated: file walk capped at 3 entries under " + base);
    CHECK(diag.counters.at("files.walk_truncated") == 1);
}

TEST_CASE("a dir equality predicate prunes descent below the walk cap") {
    TempDir root("fwalk4");
    build_pruning_tree(root.path());
    std::string base = root.path().string();

    LiveConfig config;
    config.files_root = root.path();
    config.walk_limit = 3;
    ExprPtr pred = parse_pred("dir = '" + base + "/target'");

    Diagnostics diag;
    Relation files = ProviderSet::live(config).snapshot("files", pred.get(), diag);

    // heavy/ is skipped entirely, so the same cap now suffices.
    CHECK(column_texts(files, "path") == (std::vector<std::string>{base + "/target/t.txt"}));
    CHECK(diag.warnings.empty());
    CHECK(diag.counters.count("files.walk_truncated") == 0);
}

TEST_CASE("a path LIKE literal prefix prunes descent too") {
    TempDir root("fwalk5");
    build_pruning_tree(root.path());
    std::string base = root.path().string();

    LiveConfig config;
    config.files_root = root.path();
    config.walk_limit = 3;
    ExprPtr pred = parse_pred("path LIKE '" + base + "/target/%'");

    Diagnostics diag;
    Relation files = ProviderSet::live(config).snapshot("files", pred.get(), diag);
    CHECK(column_texts(files, "path") == (std::vector<std::string>{base + "/target/t.txt"}));
    CHECK(diag.warnings.empty());
}

TEST_CASE("pruning never changes the files result") {
    TempDir root("fwalk6");
    build_pruning_tree(root.path());
    write_file(root.path() / "top.txt", "top");
    std::string base = root.path().string();

    LiveConfig config;
    config.files_root = root.path();
    ProviderSet providers = ProviderSet::live(config);
    Relation everything = snap(providers, "files");
    REQUIRE(everything.tuples.size() == 7);

    // Prunable and non-prunable shapes alike must equal filter-after-walk.
    std::vector<std::string> predicates = {
        "dir = '" + base + "/target'",
        "path = '" + base + "/heavy/f3'",
        "path LIKE '" + base + "/heavy/%'",
        "dir = '" + base + "/target' AND size_bytes > 0",
        "dir = '" + base + "/target' OR file_name = 'f1'",
        "NOT dir = '" + base + "/heavy'",
        "file_name LIKE '%.txt'",
    };
    for (const std::string& text : predicates) {
        ExprPtr pred = parse_pred(text);
        Relation got = snap(providers, "files", pred.get());
        Relation want = naive_filter(everything, *pred);
        if (!bags_equal(got, want)) FAIL_CHECK("files pushdown mismatch on: ", text);
    }
}

TEST_CASE("apply_pushed_predicate keeps only definite matches") {
    Relation rel;
    rel.schema = RelationSchema{"t", {{"a", AttrType::Int}}, {"a"}};
    for (int i = 0; i < 3; ++i) {
        Tuple t;
        t.push_back(i == 1 ? Value::null() : Value::integer(i));
        rel.tuples.push_back(std::move(t));
    }

    Relation untouched = rel;
    apply_pushed_predicate(untouched, nullptr);
    CHECK(untouched.tuples.size() == 3);

    ExprPtr pred = parse_pred("a >= 0");  // NULL compares Unknown and is dropped
    apply_pushed_predicate(rel, pred.get());
    CHECK(column_ints(rel, "a") == (std::vector<std::int64_t>{0, 2}));
}
