#include "rosi/error.hpp"

#include <algorithm>

namespace rosi {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::LexError: return "LexError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidSchema: return "InvalidSchema";
        case ErrorCode::DuplicateRelation: return "DuplicateRelation";
        case ErrorCode::AttributeTypeConflict: return "AttributeTypeConflict";
        case ErrorCode::UnknownRelation: return "UnknownRelation";
        case ErrorCode::DisconnectedMembers: return "DisconnectedMembers";
        case ErrorCode::DuplicateObjectName: return "DuplicateObjectName";
        case ErrorCode::UnknownColumn: return "UnknownColumn";
        case ErrorCode::UnknownAttribute: return "UnknownAttribute";
        case ErrorCode::AmbiguityUnsupported: return "AmbiguityUnsupported";
        case ErrorCode::NoConnection: return "NoConnection";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::CatalogTooLargeForInference: return "CatalogTooLargeForInference";
        case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
        case ErrorCode::FixtureReadError: return "FixtureReadError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::DuplicateRelationName: return "DuplicateRelationName";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Error";
}

std::string format_query_error(const Error& error, std::string_view query_text) {
    std::string out = "error: ";
    out += error_code_name(error.code());
    out += ": ";
    out += error.what();
    if (!error.offset()) {
        out.push_back('\n');
        return out;
    }

    std::size_t offset = std::min(*error.offset(), query_text.size());
    out += " (at offset " + std::to_string(*error.offset()) + ")\n";

    std::size_t line_start = query_text.rfind('\n', offset == 0 ? 0 : offset - 1);
    line_start = line_start == std::string_view::npos ? 0 : line_start + 1;
    std::size_t line_end = query_text.find('\n', offset);
    if (line_end == std::string_view::npos) line_end = query_text.size();

    out += "  ";
    out += query_text.substr(line_start, line_end - line_start);
    out += "\n  ";
    out.append(offset - line_start, ' ');
    out += "^\n";
    return out;
}

}  // namespace rosi
