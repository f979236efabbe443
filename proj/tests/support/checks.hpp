#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "rosi/error.hpp"

namespace rosi::testing {

// Runs `fn`, which must throw rosi::Error, and hands the error back so the
// caller can assert on code/message/offset in one place.
inline Error capture_error(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    throw std::runtime_error("expected rosi::Error, but no exception was thrown");
}

inline std::string source_path(const std::string& relative) {
#ifdef ROSI_SOURCE_DIR
    return std::string(ROSI_SOURCE_DIR) + "/" + relative;
#else
#error "ROSI_SOURCE_DIR must be defined for the test binaries"
#endif
}

}  // namespace rosi::testing
