#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rosi/catalog.hpp"
#include "rosi/providers.hpp"
#include "rosi/relation.hpp"

namespace rosi {

// .rel file format (normative, byte-exact):
//   header line: name:TYPE comma-separated
//   body rows:   comma-separated fields, rows in canonical sorted order
//   TEXT always double-quoted with "" escaping (commas, quotes, and literal
//   newlines are legal inside); INT/TIMESTAMP decimal; BOOL true/false;
//   NULL a completely empty unquoted field; LF line endings.

// Encodes one field as it appears in a .rel body row (and in CSV output).
std::string encode_field(const Value& value);

// Serializes a whole relation to .rel bytes, rows canonically sorted.
std::string encode_relation(const Relation& relation);

// Parses .rel bytes. The relation is named `relation_name` (files carry no
// name; the loader derives it from the file stem). Throws FormatError with
// the 1-based line on which the offending record starts; `origin` names the
// file in messages.
Relation decode_relation(std::string_view bytes, const std::string& relation_name,
                         const std::string& origin);

// Reads <path> as a .rel file; the relation name is the file stem.
Relation read_relation_file(const std::filesystem::path& path);

// Writes one <relation>.rel per relation into `dir` (created if missing).
// Identical relations always produce identical bytes. Throws IoError or
// DuplicateRelationName.
void save_snapshot(const std::vector<Relation>& relations, const std::filesystem::path& dir);

// Loads a fixture directory: reconstructs a catalog from the headers
// (registration order: lexicographic filename) and returns a fixture-mode
// provider over the directory. Attribute-type conflicts across files are
// registration errors. Throws IoError, FormatError, or AttributeTypeConflict.
std::pair<Catalog, ProviderSet> load_snapshot(const std::filesystem::path& dir);

}  // namespace rosi
