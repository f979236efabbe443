#pragma once

#include <string>
#include <vector>

namespace rosi::testing {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the rosi binary (path baked in at compile time) with the given
// arguments, optionally feeding stdin. Environment extras are KEY=VALUE
// pairs applied to the child only.
RunResult run_rosi(const std::vector<std::string>& args, const std::string& stdin_text = "",
                   const std::vector<std::string>& env_extra = {});

}  // namespace rosi::testing
