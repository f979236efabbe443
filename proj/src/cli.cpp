#include "rosi/cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "rosi/error.hpp"
#include "rosi/executor.hpp"
#include "rosi/parser.hpp"
#include "rosi/planner.hpp"
#include "rosi/repl.hpp"
#include "rosi/snapshot.hpp"

namespace rosi {

namespace {

constexpr const char* kUsage =
    "usage: rosi <command> [options]\n"
    "\n"
    "commands:\n"
    "  query <sql>       run one query and print the result\n"
    "  repl              interactive session\n"
    "  snap --out <dir>  save a snapshot of every relation as .rel files\n"
    "\n"
    "options:\n"
    "  --snapshot <dir>  query a saved snapshot instead of the live system\n"
    "  --root <dir>      scope of the files relation (default: ., env ROSI_ROOT)\n"
    "  --format <f>      output format: table, csv, or jsonl\n"
    "                    (default: table on a terminal, csv otherwise; env ROSI_FORMAT)\n"
    "  --explain         print the query plan instead of executing\n";

struct CliOptions {
    std::string command;
    std::string sql;
    std::optional<std::string> snapshot_dir;
    std::optional<std::string> root;
    std::optional<std::string> out_dir;
    std::optional<OutputFormat> format;
    bool explain = false;
};

[[noreturn]] void usage_failure(const std::string& message) {
    throw Error(ErrorCode::UsageError, message);
}

CliOptions parse_args(const std::vector<std::string>& args) {
    CliOptions options;
    std::vector<std::string> positional;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        auto next_value = [&](const char* flag) -> const std::string& {
            if (i + 1 >= args.size()) usage_failure(std::string(flag) + " needs a value");
            return args[++i];
        };
        if (arg == "--snapshot") {
            options.snapshot_dir = next_value("--snapshot");
        } else if (arg == "--root") {
            options.root = next_value("--root");
        } else if (arg == "--out") {
            options.out_dir = next_value("--out");
        } else if (arg == "--format") {
            const std::string& value = next_value("--format");
            OutputFormat format;
            if (!parse_output_format(value, format)) {
                usage_failure("unknown format '" + value + "' (expected table, csv, or jsonl)");
            }
            options.format = format;
        } else if (arg == "--explain") {
            options.explain = true;
        } else if (!arg.empty() && arg[0] == '-') {
            usage_failure("unknown option '" + arg + "'");
        } else {
            positional.push_back(arg);
        }
    }

    if (positional.empty()) usage_failure("missing command");
    options.command = positional[0];
    if (options.command == "query") {
        if (positional.size() < 2) usage_failure("query needs a SQL string");
        if (positional.size() > 2) usage_failure("query takes exactly one SQL string");
        options.sql = positional[1];
    } else if (options.command == "repl" || options.command == "snap") {
        if (positional.size() > 1) {
            usage_failure(options.command + " takes no positional arguments");
        }
        if (options.command == "snap" && !options.out_dir) {
            usage_failure("snap needs --out <dir>");
        }
    } else {
        usage_failure("unknown command '" + options.command + "'");
    }
    return options;
}

OutputFormat resolve_format(const CliOptions& options, std::ostream& out) {
    if (options.format) return *options.format;
    if (const char* env = std::getenv("ROSI_FORMAT")) {
        OutputFormat format;
        if (!parse_output_format(env, format)) {
            usage_failure(std::string("ROSI_FORMAT has unknown format '") + env + "'");
        }
        return format;
    }
    bool tty = &out == &std::cout && ::isatty(::fileno(stdout));
    return tty ? OutputFormat::Table : OutputFormat::Csv;
}

Session build_session(const CliOptions& options, OutputFormat format) {
    Session session;
    session.format = format;
    if (options.snapshot_dir) {
        auto [catalog, providers] = load_snapshot(*options.snapshot_dir);
        session.catalog = std::move(catalog);
        session.providers = std::move(providers);
        return session;
    }
    LiveConfig config;
    if (options.root) {
        config.files_root = *options.root;
    } else if (const char* env = std::getenv("ROSI_ROOT")) {
        config.files_root = env;
    }
    session.catalog = default_catalog();
    session.providers = ProviderSet::live(std::move(config));
    return session;
}

void emit_warnings(const Diagnostics& diag, std::ostream& err) {
    for (const auto& warning : diag.warnings) err << "warning: " << warning << "\n";
}

int run_query_command(const CliOptions& options, OutputFormat format, std::ostream& out,
                      std::ostream& err) {
    SelectStmt stmt;
    try {
        stmt = parse_query(options.sql);
    } catch (const Error& e) {
        err << format_query_error(e, options.sql);
        return kExitQueryError;
    }

    Session session;
    try {
        session = build_session(options, format);
    } catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitRuntimeError;
    }

    PlanPtr plan;
    try {
        plan = push_down_predicates(plan_query(stmt, session.catalog));
    } catch (const Error& e) {
        err << format_query_error(e, options.sql);
        return kExitQueryError;
    }

    if (options.explain) {
        out << explain(*plan) << "\n";
        return kExitOk;
    }

    try {
        Diagnostics diag;
        Relation relation = execute(*plan, session.providers, diag);
        emit_warnings(diag, err);
        out << render_relation(relation, session.format);
    } catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

int run_snap_command(const CliOptions& options, OutputFormat format, std::ostream& err) {
    try {
        Session session = build_session(options, format);
        Diagnostics diag;
        std::vector<Relation> relations;
        for (const auto& [name, schema] : session.catalog.relations()) {
            (void)schema;
            try {
                relations.push_back(session.providers.snapshot(name, nullptr, diag));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ProviderUnavailable) throw;
                diag.warn("relation '" + name + "' unavailable, not saved: " + e.what());
            }
        }
        save_snapshot(relations, *options.out_dir);
        emit_warnings(diag, err);
    } catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

int run_repl_command(const CliOptions& options, OutputFormat format, std::istream& in,
                     std::ostream& out, std::ostream& err) {
    Session session;
    try {
        session = build_session(options, format);
    } catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitRuntimeError;
    }

    std::string line;
    err << "rosi> " << std::flush;
    while (std::getline(in, line)) {
        ReplResult result = repl_step(line, session);
        out << result.output << std::flush;
        err << result.diagnostics;
        if (result.quit) break;
        err << "rosi> " << std::flush;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    try {
        CliOptions options = parse_args(args);
        OutputFormat format = resolve_format(options, out);
        if (options.command == "query") return run_query_command(options, format, out, err);
        if (options.command == "snap") return run_snap_command(options, format, err);
        return run_repl_command(options, format, in, out, err);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UsageError) {
            err << "error: " << e.what() << "\n" << kUsage;
            return kExitUsageError;
        }
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitRuntimeError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

}  // namespace rosi
