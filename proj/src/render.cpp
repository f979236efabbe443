#include "rosi/render.hpp"

#include <algorithm>

#include <json.hpp>

#include "rosi/snapshot.hpp"

namespace rosi {

namespace {

// TABLE cell text: raw values, NULL spelled literally.
std::string table_cell(const Value& value) {
    switch (value.tag()) {
        case Value::Tag::Null: return "NULL";
        case Value::Tag::Bool: return value.as_bool() ? "true" : "false";
        case Value::Tag::Int: return std::to_string(value.as_int());
        case Value::Tag::Timestamp: return std::to_string(value.as_timestamp());
        case Value::Tag::Text: return value.as_text();
    }
    return "NULL";
}

void append_padded(std::string& out, const std::string& text, std::size_t width, bool last) {
    out += text;
    if (!last) out.append(width - text.size() + 2, ' ');
}

}  // namespace

bool parse_output_format(std::string_view text, OutputFormat& out) {
    if (text == "table") {
        out = OutputFormat::Table;
        return true;
    }
    if (text == "csv") {
        out = OutputFormat::Csv;
        return true;
    }
    if (text == "jsonl") {
        out = OutputFormat::Jsonl;
        return true;
    }
    return false;
}

const char* output_format_name(OutputFormat format) {
    switch (format) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Jsonl: return "jsonl";
    }
    return "table";
}

std::string render_table(const Relation& relation) {
    const auto& attrs = relation.schema.attributes;
    std::vector<std::size_t> widths;
    for (const auto& attr : attrs) widths.push_back(attr.name.size());

    std::vector<std::vector<std::string>> rows;
    for (const auto& tuple : relation.tuples) {
        std::vector<std::string> row;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            row.push_back(table_cell(tuple[i]));
            widths[i] = std::max(widths[i], row.back().size());
        }
        rows.push_back(std::move(row));
    }

    std::string out;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        append_padded(out, attrs[i].name, widths[i], i + 1 == attrs.size());
    }
    out.push_back('\n');
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        append_padded(out, std::string(widths[i], '-'), widths[i], i + 1 == attrs.size());
    }
    out.push_back('\n');
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            append_padded(out, row[i], widths[i], i + 1 == row.size());
        }
        out.push_back('\n');
    }
    return out;
}

std::string render_csv(const Relation& relation) {
    std::string out;
    const auto& attrs = relation.schema.attributes;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) out.push_back(',');
        out += attrs[i].name;
    }
    out.push_back('\n');
    for (const auto& tuple : relation.tuples) {
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) out.push_back(',');
            out += encode_field(tuple[i]);
        }
        out.push_back('\n');
    }
    return out;
}

std::string render_jsonl(const Relation& relation) {
    std::string out;
    const auto& attrs = relation.schema.attributes;
    for (const auto& tuple : relation.tuples) {
        nlohmann::ordered_json object;
        for (std::size_t i = 0; i < attrs.size(); ++i) {
            const Value& value = tuple[i];
            switch (value.tag()) {
                case Value::Tag::Null: object[attrs[i].name] = nullptr; break;
                case Value::Tag::Bool: object[attrs[i].name] = value.as_bool(); break;
                case Value::Tag::Int: object[attrs[i].name] = value.as_int(); break;
                case Value::Tag::Timestamp: object[attrs[i].name] = value.as_timestamp(); break;
                case Value::Tag::Text: object[attrs[i].name] = value.as_text(); break;
            }
        }
        out += object.dump();
        out.push_back('\n');
    }
    return out;
}

std::string render_relation(const Relation& relation, OutputFormat format) {
    switch (format) {
        case OutputFormat::Table: return render_table(relation);
        case OutputFormat::Csv: return render_csv(relation);
        case OutputFormat::Jsonl: return render_jsonl(relation);
    }
    return "";
}

}  // namespace rosi
