#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rosi/error.hpp"

namespace rosi {

// Column types. No floating point in v1; TIMESTAMP is integer seconds since
// the epoch.
enum class AttrType {
    Int,
    Text,
    Bool,
    Timestamp,
};

const char* attr_type_name(AttrType type);

// Parses "INT" / "TEXT" / "BOOL" / "TIMESTAMP"; returns false on anything else.
bool parse_attr_type(std::string_view text, AttrType& out);

// True iff `name` matches [a-z_][a-z0-9_]*.
bool is_valid_attribute_name(std::string_view name);

struct AttributeDef {
    std::string name;
    AttrType type;

    friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct RelationSchema {
    std::string name;
    std::vector<AttributeDef> attributes;
    // Declared key columns. Keys are documentation: provider data is not
    // checked against them.
    std::vector<std::string> key;

    bool has_attribute(std::string_view attr) const;
    // Index of `attr` in `attributes`, or npos.
    std::size_t index_of(std::string_view attr) const;
    AttrType type_of(std::string_view attr) const;
    std::set<std::string> attribute_names() const;

    // Throws InvalidSchema if names are malformed/duplicated or the key is
    // empty or not a subset of the attributes.
    void validate() const;

    friend bool operator==(const RelationSchema&, const RelationSchema&) = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// A pre-declared group of relations whose natural join is treated as
// meaningful. When any objects are declared, FROM-less inference only
// considers relation sets inside a single object.
struct MaximalObject {
    std::string name;
    std::set<std::string> members;
};

// The attribute universe, relation schemas, and maximal-object declarations.
// One attribute name means one thing everywhere: registering the same name
// under two types is rejected. Built single-threaded at startup, then
// immutable and safe to share.
class Catalog {
public:
    // Throws DuplicateRelation or AttributeTypeConflict.
    void register_relation(RelationSchema schema);

    // Throws UnknownRelation, DisconnectedMembers, or DuplicateObjectName.
    // Members must be linked pairwise-transitively by shared attribute names.
    void register_maximal_object(std::string name, std::set<std::string> members);

    // Exactly the relations whose schema contains `attr`; empty if none.
    std::set<std::string> attribute_homes(std::string_view attr) const;

    const RelationSchema* find_relation(std::string_view name) const;
    // Throws UnknownRelation.
    const RelationSchema& relation(std::string_view name) const;

    const std::map<std::string, RelationSchema>& relations() const { return relations_; }
    const std::map<std::string, AttrType>& attribute_registry() const { return registry_; }
    const std::map<std::string, MaximalObject>& maximal_objects() const { return objects_; }

private:
    std::map<std::string, RelationSchema> relations_;
    std::map<std::string, AttrType> registry_;
    std::map<std::string, MaximalObject> objects_;
};

// True iff `members` form a connected subgraph of the shared-attribute graph
// over the catalog's schemas. Singleton sets are connected; the empty set is
// not.
bool relations_connected(const Catalog& catalog, const std::set<std::string>& members);

}  // namespace rosi
