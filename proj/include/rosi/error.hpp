#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rosi {

// Every failure the engine can report, by name. The CLI maps these to exit
// codes by the phase in which they were raised, not by the code itself
// (UnknownRelation can come from the planner or from a provider).
enum class ErrorCode {
    // lexing / parsing
    LexError,
    ParseError,
    // catalog
    InvalidSchema,
    DuplicateRelation,
    AttributeTypeConflict,
    UnknownRelation,
    DisconnectedMembers,
    DuplicateObjectName,
    // planning / inference
    UnknownColumn,
    UnknownAttribute,
    AmbiguityUnsupported,
    NoConnection,
    TypeMismatch,
    CatalogTooLargeForInference,
    // providers / snapshots
    ProviderUnavailable,
    FixtureReadError,
    IoError,
    FormatError,
    DuplicateRelationName,
    // cli
    UsageError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Error(ErrorCode code, std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), code_(code), offset_(offset) {}

    ErrorCode code() const noexcept { return code_; }

    // Byte offset into the query text, when the error points at one.
    const std::optional<std::size_t>& offset() const noexcept { return offset_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> offset_;
};

// Diagnostic text for one error: "error: <Code>: <message>", and when the
// error carries an offset into `query_text`, an "(at offset N)" suffix plus
// the offending line with a caret underneath.
std::string format_query_error(const Error& error, std::string_view query_text);

}  // namespace rosi
