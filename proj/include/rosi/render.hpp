#pragma once

#include <string>

#include "rosi/relation.hpp"

namespace rosi {

enum class OutputFormat { Table, Csv, Jsonl };

// "table" / "csv" / "jsonl"; returns false on anything else.
bool parse_output_format(std::string_view text, OutputFormat& out);
const char* output_format_name(OutputFormat format);

// Human format: column-aligned, header plus a dash rule, NULL rendered
// literally.
std::string render_table(const Relation& relation);

// Machine format: header row of column names, then rows with exactly the
// .rel field encoding.
std::string render_csv(const Relation& relation);

// One JSON object per row; NULL becomes null, TIMESTAMP an integer.
std::string render_jsonl(const Relation& relation);

std::string render_relation(const Relation& relation, OutputFormat format);

}  // namespace rosi
