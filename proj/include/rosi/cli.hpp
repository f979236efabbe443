#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rosi {

// Exit codes: 0 success, 1 lex/parse/plan error, 2 provider/runtime error,
// 3 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitQueryError = 1;
inline constexpr int kExitRuntimeError = 2;
inline constexpr int kExitUsageError = 3;

// Runs one invocation: `query <sql>`, `repl`, or `snap --out <dir>`, with
// flags --snapshot <dir>, --root <dir>, --format table|csv|jsonl, --explain.
// Results go to `out`, warnings and errors to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace rosi
