#include "rosi/providers.hpp"

#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include "rosi/error.hpp"
#include "rosi/eval.hpp"
#include "rosi/snapshot.hpp"

namespace rosi {

namespace {

namespace fs = std::filesystem;

std::optional<std::int64_t> parse_int64(std::string_view text) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::string> read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buffer.str();
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
}

std::vector<std::string_view> whitespace_fields(std::string_view text) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) fields.push_back(text.substr(start, i - start));
    }
    return fields;
}

// ---------------------------------------------------------------------------
// users: the account database, one row per entry.

Relation live_users(const RelationSchema& schema, const fs::path& passwd_path,
                    Diagnostics& diag) {
    auto content = read_text_file(passwd_path);
    if (!content) {
        throw Error(ErrorCode::ProviderUnavailable,
                    "user database not readable: " + passwd_path.string());
    }
    Relation rel;
    rel.schema = schema;
    for (const auto& line : split(*content, '\n')) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields = split(line, ':');
        if (fields.size() < 7) {
            diag.count("users.skipped_entries");
            continue;
        }
        auto uid = parse_int64(fields[2]);
        if (!uid) {
            diag.count("users.skipped_entries");
            continue;
        }
        Tuple t;
        t.push_back(Value::integer(*uid));
        t.push_back(Value::text(fields[0]));
        t.push_back(Value::text(fields[5]));
        t.push_back(Value::text(fields[6]));
        rel.tuples.push_back(std::move(t));
    }
    return rel;
}

// ---------------------------------------------------------------------------
// processes: one row per numeric entry in the process table directory.

std::vector<std::int64_t> numeric_entries(const fs::path& dir) {
    std::error_code ec;
    std::vector<std::int64_t> pids;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        auto pid = parse_int64(entry.path().filename().string());
        if (pid) pids.push_back(*pid);
    }
    if (ec) {
        throw Error(ErrorCode::ProviderUnavailable,
                    "process table not readable: " + dir.string());
    }
    std::sort(pids.begin(), pids.end());
    return pids;
}

std::optional<std::int64_t> boot_time_seconds(const fs::path& proc_root) {
    auto content = read_text_file(proc_root / "stat");
    if (!content) return std::nullopt;
    for (const auto& line : split(*content, '\n')) {
        auto fields = whitespace_fields(line);
        if (fields.size() >= 2 && fields[0] == "btime") return parse_int64(fields[1]);
    }
    return std::nullopt;
}

std::optional<std::int64_t> owner_uid(const fs::path& proc_root, std::int64_t pid) {
    auto status = read_text_file(proc_root / std::to_string(pid) / "status");
    if (status) {
        for (const auto& line : split(*status, '\n')) {
            auto fields = whitespace_fields(line);
            if (fields.size() >= 2 && fields[0] == "Uid:") return parse_int64(fields[1]);
        }
    }
    struct stat st{};
    if (::stat((proc_root / std::to_string(pid)).c_str(), &st) == 0) {
        return static_cast<std::int64_t>(st.st_uid);
    }
    return std::nullopt;
}

Value value_or_null(std::optional<std::int64_t> v) {
    return v ? Value::integer(*v) : Value::null();
}

Relation live_processes(const RelationSchema& schema, const fs::path& proc_root,
                        Diagnostics& diag) {
    std::vector<std::int64_t> pids = numeric_entries(proc_root);
    std::optional<std::int64_t> btime = boot_time_seconds(proc_root);
    long ticks = ::sysconf(_SC_CLK_TCK);
    long page = ::sysconf(_SC_PAGESIZE);

    Relation rel;
    rel.schema = schema;
    for (std::int64_t pid : pids) {
        auto stat_text = read_text_file(proc_root / std::to_string(pid) / "stat");
        if (!stat_text) {
            diag.count("processes.skipped_entries");
            continue;
        }
        // Layout: pid (comm) state ppid ... ; comm may itself contain spaces
        // and parentheses, so split at the LAST ')'.
        std::size_t open = stat_text->find('(');
        std::size_t close = stat_text->rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open) {
            diag.count("processes.skipped_entries");
            continue;
        }
        std::string command = stat_text->substr(open + 1, close - open - 1);
        auto fields = whitespace_fields(std::string_view(*stat_text).substr(close + 1));
        // After ')': [0]=state [1]=ppid ... [19]=starttime(ticks) ... [21]=rss(pages)
        if (fields.size() < 2 || fields[0].empty()) {
            diag.count("processes.skipped_entries");
            continue;
        }

        Value started_at = Value::null();
        if (btime && ticks > 0 && fields.size() > 19) {
            if (auto start_ticks = parse_int64(fields[19])) {
                started_at = Value::timestamp(*btime + *start_ticks / ticks);
            }
        }
        Value rss_bytes = Value::null();
        if (page > 0 && fields.size() > 21) {
            if (auto rss_pages = parse_int64(fields[21])) {
                rss_bytes = Value::integer(*rss_pages * page);
            }
        }

        Tuple t;
        t.push_back(Value::integer(pid));
        t.push_back(value_or_null(parse_int64(fields[1])));
        t.push_back(value_or_null(owner_uid(proc_root, pid)));
        t.push_back(Value::text(std::move(command)));
        t.push_back(Value::text(std::string(fields[0])));
        t.push_back(std::move(rss_bytes));
        t.push_back(std::move(started_at));
        rel.tuples.push_back(std::move(t));
    }
    return rel;
}

// ---------------------------------------------------------------------------
// open_files: one row per (pid, fd) with the link target as path.

Relation live_open_files(const RelationSchema& schema, const fs::path& proc_root,
                         Diagnostics& diag) {
    std::vector<std::int64_t> pids = numeric_entries(proc_root);
    Relation rel;
    rel.schema = schema;
    for (std::int64_t pid : pids) {
        fs::path fd_dir = proc_root / std::to_string(pid) / "fd";
        std::error_code ec;
        std::vector<std::int64_t> fds;
        for (const auto& entry : fs::directory_iterator(fd_dir, ec)) {
            if (auto fd = parse_int64(entry.path().filename().string())) fds.push_back(*fd);
        }
        if (ec) {
            diag.count("open_files.skipped_processes");
            continue;
        }
        std::sort(fds.begin(), fds.end());
        for (std::int64_t fd : fds) {
            std::error_code link_ec;
            fs::path target = fs::read_symlink(fd_dir / std::to_string(fd), link_ec);
            if (link_ec) {
                diag.count("open_files.skipped_entries");
                continue;
            }
            Tuple t;
            t.push_back(Value::integer(pid));
            t.push_back(Value::integer(fd));
            t.push_back(Value::text(target.string()));
            rel.tuples.push_back(std::move(t));
        }
    }
    return rel;
}

// ---------------------------------------------------------------------------
// io_requests: synthesized from per-process cumulative I/O accounting. One
// row per (process, direction) that the kernel reports; no modern OS exposes
// the actual request queue to user space.

Relation live_io_requests(const RelationSchema& schema, const fs::path& proc_root,
                          Diagnostics& diag) {
    std::vector<std::int64_t> pids = numeric_entries(proc_root);
    std::int64_t now = static_cast<std::int64_t>(::time(nullptr));

    Relation rel;
    rel.schema = schema;
    std::int64_t next_id = 1;
    bool any_readable = false;
    for (std::int64_t pid : pids) {
        auto io_text = read_text_file(proc_root / std::to_string(pid) / "io");
        if (!io_text) {
            diag.count("io_requests.skipped_processes");
            continue;
        }
        any_readable = true;
        bool has_read = false;
        bool has_write = false;
        for (const auto& line : split(*io_text, '\n')) {
            auto fields = whitespace_fields(line);
            if (fields.size() >= 2 && fields[0] == "read_bytes:") has_read = true;
            if (fields.size() >= 2 && fields[0] == "write_bytes:") has_write = true;
        }
        for (const char* op : {"read", "write"}) {
            if ((op[0] == 'r' && !has_read) || (op[0] == 'w' && !has_write)) continue;
            Tuple t;
            t.push_back(Value::integer(next_id++));
            t.push_back(Value::text("unknown"));
            t.push_back(Value::integer(pid));
            t.push_back(Value::text(op));
            t.push_back(Value::timestamp(now));
            rel.tuples.push_back(std::move(t));
        }
    }
    if (!pids.empty() && !any_readable) {
        throw Error(ErrorCode::ProviderUnavailable,
                    "per-process I/O accounting not available under " + proc_root.string());
    }
    return rel;
}

// ---------------------------------------------------------------------------
// files: bounded walk under files_root, never following symlinks. The pushed
// predicate can prune descent when it pins `path`/`dir` by equality or by a
// LIKE literal prefix; every emitted row is still post-filtered, so pruning
// only has to be sound, not precise.

struct PathConstraint {
    enum class Kind { PathPrefix, DirPrefix };
    Kind kind;
    std::string prefix;
};

std::string like_literal_prefix(const std::string& pattern) {
    std::size_t cut = pattern.find_first_of("%_");
    return cut == std::string::npos ? pattern : pattern.substr(0, cut);
}

void collect_path_constraints(const Expr& expr, std::vector<PathConstraint>& out) {
    if (expr.kind == Expr::Kind::And) {
        for (const auto& child : expr.children) collect_path_constraints(*child, out);
        return;
    }
    if (expr.kind == Expr::Kind::Compare && expr.op == CompareOp::Eq) {
        const Expr* col = expr.children[0].get();
        const Expr* lit = expr.children[1].get();
        if (col->kind != Expr::Kind::Column) std::swap(col, lit);
        if (col->kind != Expr::Kind::Column || lit->kind != Expr::Kind::Literal) return;
        if (lit->literal.tag() != Value::Tag::Text) return;
        if (col->column == "path") {
            out.push_back({PathConstraint::Kind::PathPrefix, lit->literal.as_text()});
        } else if (col->column == "dir") {
            out.push_back({PathConstraint::Kind::DirPrefix, lit->literal.as_text()});
        }
        return;
    }
    if (expr.kind == Expr::Kind::Like) {
        std::string prefix = like_literal_prefix(expr.pattern);
        if (prefix.empty()) return;
        if (expr.column == "path") {
            out.push_back({PathConstraint::Kind::PathPrefix, std::move(prefix)});
        } else if (expr.column == "dir") {
            out.push_back({PathConstraint::Kind::DirPrefix, std::move(prefix)});
        }
    }
    // Or/Not subtrees contribute nothing: they cannot pin a prefix.
}

bool may_descend(const std::string& dir_path, const std::vector<PathConstraint>& constraints) {
    std::string with_sep = dir_path == "/" ? dir_path : dir_path + "/";
    for (const auto& c : constraints) {
        bool compatible;
        if (c.kind == PathConstraint::Kind::PathPrefix) {
            // Paths below dir_path all start with dir_path + "/".
            compatible = c.prefix.starts_with(with_sep) || with_sep.starts_with(c.prefix);
        } else {
            // Dir values below dir_path are dir_path itself or extensions of
            // dir_path + "/".
            compatible = dir_path.starts_with(c.prefix) || c.prefix.starts_with(with_sep);
        }
        if (!compatible) return false;
    }
    return true;
}

struct FileWalker {
    const std::vector<PathConstraint>& constraints;
    std::size_t walk_limit;
    Diagnostics& diag;
    Relation& rel;
    std::size_t visited = 0;
    bool truncated = false;

    // Returns false once the walk cap is hit.
    bool walk(const fs::path& dir, const std::string& dir_string) {
        std::error_code ec;
        std::vector<fs::directory_entry> entries;
        for (const auto& entry : fs::directory_iterator(
                 dir, fs::directory_options::skip_permission_denied, ec)) {
            entries.push_back(entry);
        }
        if (ec) {
            diag.count("files.skipped_dirs");
            return true;
        }
        std::sort(entries.begin(), entries.end(),
                  [](const fs::directory_entry& a, const fs::directory_entry& b) {
                      return a.path().filename().string() < b.path().filename().string();
                  });

        for (const auto& entry : entries) {
            if (visited >= walk_limit) {
                truncated = true;
                return false;
            }
            ++visited;

            std::string name = entry.path().filename().string();
            std::string full =
                (dir_string == "/" ? dir_string : dir_string + "/") + name;

            struct stat st{};
            if (::lstat(entry.path().c_str(), &st) != 0) {
                diag.count("files.skipped_entries");
                continue;
            }
            if (S_ISLNK(st.st_mode)) continue;
            if (S_ISDIR(st.st_mode)) {
                if (may_descend(full, constraints)) {
                    if (!walk(entry.path(), full)) return false;
                }
                continue;
            }
            if (!S_ISREG(st.st_mode)) continue;

            Tuple t;
            t.push_back(Value::text(full));
            t.push_back(Value::text(dir_string));
            t.push_back(Value::text(std::move(name)));
            t.push_back(Value::integer(static_cast<std::int64_t>(st.st_size)));
            t.push_back(Value::timestamp(static_cast<std::int64_t>(st.st_mtime)));
            t.push_back(Value::integer(static_cast<std::int64_t>(st.st_uid)));
            rel.tuples.push_back(std::move(t));
        }
        return true;
    }
};

Relation live_files(const RelationSchema& schema, const LiveConfig& config, const Expr* pushed,
                    Diagnostics& diag) {
    std::error_code ec;
    if (!fs::is_directory(config.files_root, ec) || ec) {
        throw Error(ErrorCode::ProviderUnavailable,
                    "files root not accessible: " + config.files_root.string());
    }
    std::vector<PathConstraint> constraints;
    if (pushed) collect_path_constraints(*pushed, constraints);

    Relation rel;
    rel.schema = schema;
    std::string root_string = config.files_root.string();
    while (root_string.size() > 1 && root_string.back() == '/') root_string.pop_back();

    FileWalker walker{constraints, config.walk_limit, diag, rel};
    if (may_descend(root_string, constraints)) {
        walker.walk(config.files_root, root_string);
    }
    if (walker.truncated) {
        diag.warn("WalkTruncated: file walk capped at " + std::to_string(config.walk_limit) +
                  " entries under " + root_string);
        diag.count("files.walk_truncated");
    }
    return rel;
}

}  // namespace

const std::vector<RelationSchema>& builtin_schemas() {
    static const std::vector<RelationSchema> schemas = {
        {"users",
         {{"uid", AttrType::Int},
          {"username", AttrType::Text},
          {"home_dir", AttrType::Text},
          {"shell", AttrType::Text}},
         {"uid"}},
        {"processes",
         {{"pid", AttrType::Int},
          {"ppid", AttrType::Int},
          {"uid", AttrType::Int},
          {"command", AttrType::Text},
          {"state", AttrType::Text},
          {"rss_bytes", AttrType::Int},
          {"started_at", AttrType::Timestamp}},
         {"pid"}},
        {"files",
         {{"path", AttrType::Text},
          {"dir", AttrType::Text},
          {"file_name", AttrType::Text},
          {"size_bytes", AttrType::Int},
          {"mtime", AttrType::Timestamp},
          {"uid", AttrType::Int}},
         {"path"}},
        {"open_files",
         {{"pid", AttrType::Int}, {"fd", AttrType::Int}, {"path", AttrType::Text}},
         {"pid", "fd"}},
        {"io_requests",
         {{"request_id", AttrType::Int},
          {"device", AttrType::Text},
          {"pid", AttrType::Int},
          {"op", AttrType::Text},
          {"queued_at", AttrType::Timestamp}},
         {"request_id"}},
    };
    return schemas;
}

Catalog default_catalog() {
    Catalog catalog;
    for (const auto& schema : builtin_schemas()) catalog.register_relation(schema);
    return catalog;
}

ProviderSet ProviderSet::live(LiveConfig config) {
    ProviderSet p;
    p.mode_ = ProviderMode::Live;
    p.live_ = std::move(config);
    return p;
}

ProviderSet ProviderSet::fixture(std::filesystem::path fixture_dir) {
    ProviderSet p;
    p.mode_ = ProviderMode::Fixture;
    p.fixture_dir_ = std::move(fixture_dir);
    return p;
}

std::vector<RelationSchema> ProviderSet::list_relations() const {
    if (mode_ == ProviderMode::Live) return builtin_schemas();
    try {
        Catalog catalog = load_snapshot(fixture_dir_).first;
        std::vector<RelationSchema> schemas;
        for (const auto& [name, schema] : catalog.relations()) schemas.push_back(schema);
        return schemas;
    } catch (const Error& e) {
        throw Error(ErrorCode::FixtureReadError, e.what());
    }
}

Relation ProviderSet::snapshot(const std::string& name, const Expr* pushed,
                               Diagnostics& diag) const {
    if (mode_ == ProviderMode::Fixture) {
        fs::path path = fixture_dir_ / (name + ".rel");
        std::error_code ec;
        if (!fs::exists(path, ec) || ec) {
            throw Error(ErrorCode::UnknownRelation,
                        "unknown relation '" + name + "' (no " + path.string() + ")");
        }
        Relation rel = read_relation_file(path);
        apply_pushed_predicate(rel, pushed);
        return rel;
    }

    Relation rel;
    if (name == "users") {
        rel = live_users(builtin_schemas()[0], live_.passwd_path, diag);
    } else if (name == "processes") {
        rel = live_processes(builtin_schemas()[1], live_.proc_root, diag);
    } else if (name == "files") {
        rel = live_files(builtin_schemas()[2], live_, pushed, diag);
    } else if (name == "open_files") {
        rel = live_open_files(builtin_schemas()[3], live_.proc_root, diag);
    } else if (name == "io_requests") {
        rel = live_io_requests(builtin_schemas()[4], live_.proc_root, diag);
    } else {
        throw Error(ErrorCode::UnknownRelation, "unknown relation '" + name + "'");
    }
    apply_pushed_predicate(rel, pushed);
    return rel;
}

void apply_pushed_predicate(Relation& relation, const Expr* pushed) {
    if (!pushed) return;
    std::vector<Tuple> kept;
    for (auto& tuple : relation.tuples) {
        if (eval_predicate(*pushed, tuple, relation.schema)) kept.push_back(std::move(tuple));
    }
    relation.tuples = std::move(kept);
}

}  // namespace rosi
