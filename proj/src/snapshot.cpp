#include "rosi/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "rosi/error.hpp"

namespace rosi {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void format_error(const std::string& origin, std::size_t line,
                               const std::string& message) {
    throw Error(ErrorCode::FormatError, origin + ":" + std::to_string(line) + ": " + message,
                line);
}

// Cursor over .rel bytes. Tracks the 1-based line so errors can point at the
// record that started them even when quoted TEXT spans physical lines.
struct Cursor {
    std::string_view bytes;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool at_end() const { return pos >= bytes.size(); }
    char peek() const { return bytes[pos]; }

    char take() {
        char c = bytes[pos++];
        if (c == '\n') ++line;
        return c;
    }
};

struct RawField {
    std::string text;
    bool quoted = false;
};

RawField parse_field(Cursor& cur, const std::string& origin) {
    RawField field;
    if (!cur.at_end() && cur.peek() == '"') {
        field.quoted = true;
        std::size_t start_line = cur.line;
        cur.take();
        while (true) {
            if (cur.at_end()) format_error(origin, start_line, "unterminated quoted field");
            char c = cur.take();
            if (c != '"') {
                field.text.push_back(c);
                continue;
            }
            if (!cur.at_end() && cur.peek() == '"') {
                cur.take();
                field.text.push_back('"');
                continue;
            }
            break;
        }
        if (!cur.at_end() && cur.peek() != ',' && cur.peek() != '\n') {
            format_error(origin, start_line, "unexpected data after closing quote");
        }
        return field;
    }
    while (!cur.at_end() && cur.peek() != ',' && cur.peek() != '\n') {
        field.text.push_back(cur.take());
    }
    return field;
}

// One record: fields separated by commas, terminated by LF or end of input.
std::vector<RawField> parse_record(Cursor& cur, const std::string& origin) {
    std::vector<RawField> fields;
    fields.push_back(parse_field(cur, origin));
    while (!cur.at_end() && cur.peek() == ',') {
        cur.take();
        fields.push_back(parse_field(cur, origin));
    }
    if (!cur.at_end()) cur.take();  // consume the LF
    return fields;
}

std::int64_t parse_decimal(const std::string& text, const std::string& origin, std::size_t line,
                           const char* type_name) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        format_error(origin, line, "invalid " + std::string(type_name) + " field '" + text + "'");
    }
    return value;
}

Value decode_value(const RawField& field, AttrType type, const std::string& origin,
                   std::size_t line) {
    if (field.quoted) {
        if (type != AttrType::Text) {
            format_error(origin, line,
                         std::string("quoted field in ") + attr_type_name(type) + " column");
        }
        return Value::text(field.text);
    }
    if (field.text.empty()) return Value::null();
    switch (type) {
        case AttrType::Int:
            return Value::integer(parse_decimal(field.text, origin, line, "INT"));
        case AttrType::Timestamp:
            return Value::timestamp(parse_decimal(field.text, origin, line, "TIMESTAMP"));
        case AttrType::Bool:
            if (field.text == "true") return Value::boolean(true);
            if (field.text == "false") return Value::boolean(false);
            format_error(origin, line, "invalid BOOL field '" + field.text + "'");
        case AttrType::Text:
            format_error(origin, line, "TEXT fields must be quoted");
    }
    format_error(origin, line, "unreachable");
}

std::vector<AttributeDef> parse_header(const std::vector<RawField>& fields,
                                       const std::string& origin) {
    std::vector<AttributeDef> attributes;
    std::set<std::string> seen;
    for (const auto& field : fields) {
        if (field.quoted) format_error(origin, 1, "header fields must not be quoted");
        std::size_t colon = field.text.find(':');
        if (colon == std::string::npos) {
            format_error(origin, 1, "header field '" + field.text + "' is not name:TYPE");
        }
        std::string name = field.text.substr(0, colon);
        std::string type_text = field.text.substr(colon + 1);
        if (!is_valid_attribute_name(name)) {
            format_error(origin, 1, "invalid attribute name '" + name + "'");
        }
        AttrType type;
        if (!parse_attr_type(type_text, type)) {
            format_error(origin, 1, "unknown type '" + type_text + "'");
        }
        if (!seen.insert(name).second) {
            format_error(origin, 1, "duplicate attribute name '" + name + "'");
        }
        attributes.push_back({std::move(name), type});
    }
    return attributes;
}

}  // namespace

std::string encode_field(const Value& value) {
    switch (value.tag()) {
        case Value::Tag::Null:
            return "";
        case Value::Tag::Bool:
            return value.as_bool() ? "true" : "false";
        case Value::Tag::Int:
            return std::to_string(value.as_int());
        case Value::Tag::Timestamp:
            return std::to_string(value.as_timestamp());
        case Value::Tag::Text: {
            std::string out = "\"";
            for (char c : value.as_text()) {
                if (c == '"') out += "\"\"";
                else out.push_back(c);
            }
            out.push_back('"');
            return out;
        }
    }
    return "";
}

std::string encode_relation(const Relation& relation) {
    std::string out;
    const auto& attrs = relation.schema.attributes;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) out.push_back(',');
        out += attrs[i].name;
        out.push_back(':');
        out += attr_type_name(attrs[i].type);
    }
    out.push_back('\n');

    std::vector<Tuple> rows = relation.tuples;
    sort_tuples_canonically(rows);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += encode_field(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

Relation decode_relation(std::string_view bytes, const std::string& relation_name,
                         const std::string& origin) {
    Cursor cur{bytes};
    if (cur.at_end()) format_error(origin, 1, "missing header line");

    Relation relation;
    relation.schema.name = relation_name;
    relation.schema.attributes = parse_header(parse_record(cur, origin), origin);
    for (const auto& attr : relation.schema.attributes) {
        relation.schema.key.push_back(attr.name);
    }

    while (!cur.at_end()) {
        std::size_t record_line = cur.line;
        std::vector<RawField> fields = parse_record(cur, origin);
        if (fields.size() != relation.schema.attributes.size()) {
            format_error(origin, record_line,
                         "expected " + std::to_string(relation.schema.attributes.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        Tuple tuple;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            tuple.push_back(decode_value(fields[i], relation.schema.attributes[i].type, origin,
                                         record_line));
        }
        relation.tuples.push_back(std::move(tuple));
    }
    return relation;
}

Relation read_relation_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "read failure: " + path.string());
    return decode_relation(buffer.str(), path.stem().string(), path.string());
}

void save_snapshot(const std::vector<Relation>& relations, const std::filesystem::path& dir) {
    std::set<std::string> names;
    for (const auto& relation : relations) {
        if (!names.insert(relation.schema.name).second) {
            throw Error(ErrorCode::DuplicateRelationName,
                        "duplicate relation name '" + relation.schema.name + "'");
        }
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create directory: " + dir.string());
    for (const auto& relation : relations) {
        fs::path path = dir / (relation.schema.name + ".rel");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write file: " + path.string());
        out << encode_relation(relation);
        out.flush();
        if (!out) throw Error(ErrorCode::IoError, "write failure: " + path.string());
    }
}

std::pair<Catalog, ProviderSet> load_snapshot(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec) || ec) {
        throw Error(ErrorCode::IoError, "not a snapshot directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".rel") files.push_back(entry.path());
    }
    if (ec) throw Error(ErrorCode::IoError, "cannot list directory: " + dir.string());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    Catalog catalog;
    for (const auto& file : files) {
        catalog.register_relation(read_relation_file(file).schema);
    }
    return {std::move(catalog), ProviderSet::fixture(dir)};
}

}  // namespace rosi
