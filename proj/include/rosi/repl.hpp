#pragma once

#include <string>

#include "rosi/catalog.hpp"
#include "rosi/providers.hpp"
#include "rosi/render.hpp"

namespace rosi {

// One interactive session: an immutable catalog and provider set plus the
// output-format toggle.
struct Session {
    Catalog catalog;
    ProviderSet providers;
    OutputFormat format = OutputFormat::Table;
    std::int64_t warnings_emitted = 0;
};

struct ReplResult {
    std::string output;       // result rows or meta-command listing
    std::string diagnostics;  // errors and warnings, never mixed into output
    bool quit = false;
};

// Processes one REPL line: lines starting with '.' are meta-commands
// (.tables, .schema [rel], .maxobjects, .connections <attrs...>,
// .format table|csv|jsonl, .quit); anything else non-empty is a query.
// Errors become diagnostics; the session survives them.
ReplResult repl_step(const std::string& line, Session& session);

}  // namespace rosi
