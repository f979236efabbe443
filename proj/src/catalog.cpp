#include "rosi/catalog.hpp"

#include <algorithm>
#include <deque>

namespace rosi {

const char* attr_type_name(AttrType type) {
    switch (type) {
        case AttrType::Int: return "INT";
        case AttrType::Text: return "TEXT";
        case AttrType::Bool: return "BOOL";
        case AttrType::Timestamp: return "TIMESTAMP";
    }
    return "?";
}

bool parse_attr_type(std::string_view text, AttrType& out) {
    if (text == "INT") { out = AttrType::Int; return true; }
    if (text == "TEXT") { out = AttrType::Text; return true; }
    if (text == "BOOL") { out = AttrType::Bool; return true; }
    if (text == "TIMESTAMP") { out = AttrType::Timestamp; return true; }
    return false;
}

bool is_valid_attribute_name(std::string_view name) {
    if (name.empty()) return false;
    auto is_lower = [](char c) { return c >= 'a' && c <= 'z'; };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!is_lower(name[0]) && name[0] != '_') return false;
    for (char c : name.substr(1)) {
        if (!is_lower(c) && !is_digit(c) && c != '_') return false;
    }
    return true;
}

bool RelationSchema::has_attribute(std::string_view attr) const {
    return index_of(attr) != npos;
}

std::size_t RelationSchema::index_of(std::string_view attr) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i].name == attr) return i;
    }
    return npos;
}

AttrType RelationSchema::type_of(std::string_view attr) const {
    std::size_t i = index_of(attr);
    if (i == npos) {
        throw Error(ErrorCode::UnknownColumn,
                    "relation " + name + " has no attribute " + std::string(attr));
    }
    return attributes[i].type;
}

std::set<std::string> RelationSchema::attribute_names() const {
    std::set<std::string> out;
    for (const auto& attr : attributes) out.insert(attr.name);
    return out;
}

void RelationSchema::validate() const {
    if (!is_valid_attribute_name(name)) {
        throw Error(ErrorCode::InvalidSchema, "invalid relation name: " + name);
    }
    if (attributes.empty()) {
        throw Error(ErrorCode::InvalidSchema, "relation " + name + " has no attributes");
    }
    std::set<std::string> seen;
    for (const auto& attr : attributes) {
        if (!is_valid_attribute_name(attr.name)) {
            throw Error(ErrorCode::InvalidSchema,
                        "invalid attribute name in " + name + ": " + attr.name);
        }
        if (!seen.insert(attr.name).second) {
            throw Error(ErrorCode::InvalidSchema,
                        "duplicate attribute in " + name + ": " + attr.name);
        }
    }
    if (key.empty()) {
        throw Error(ErrorCode::InvalidSchema, "relation " + name + " has an empty key");
    }
    for (const auto& k : key) {
        if (!seen.count(k)) {
            throw Error(ErrorCode::InvalidSchema,
                        "key column " + k + " is not an attribute of " + name);
        }
    }
}

void Catalog::register_relation(RelationSchema schema) {
    schema.validate();
    if (relations_.count(schema.name)) {
        throw Error(ErrorCode::DuplicateRelation, "relation already registered: " + schema.name);
    }
    // Universal relation assumption: one attribute name, one type, everywhere.
    for (const auto& attr : schema.attributes) {
        auto it = registry_.find(attr.name);
        if (it != registry_.end() && it->second != attr.type) {
            throw Error(ErrorCode::AttributeTypeConflict,
                        "attribute " + attr.name + " already registered as " +
                            attr_type_name(it->second) + ", relation " + schema.name +
                            " declares " + attr_type_name(attr.type));
        }
    }
    for (const auto& attr : schema.attributes) {
        registry_.emplace(attr.name, attr.type);
    }
    relations_.emplace(schema.name, std::move(schema));
}

void Catalog::register_maximal_object(std::string name, std::set<std::string> members) {
    if (objects_.count(name)) {
        throw Error(ErrorCode::DuplicateObjectName, "maximal object already declared: " + name);
    }
    if (members.empty()) {
        throw Error(ErrorCode::InvalidSchema, "maximal object " + name + " has no members");
    }
    for (const auto& member : members) {
        if (!relations_.count(member)) {
            throw Error(ErrorCode::UnknownRelation,
                        "maximal object " + name + " names unknown relation " + member);
        }
    }
    if (!relations_connected(*this, members)) {
        throw Error(ErrorCode::DisconnectedMembers,
                    "members of maximal object " + name + " do not share attributes");
    }
    // Build the object before using `name` as the key: emplace argument
    // evaluation order is unspecified, so moving `name` inside the argument
    // list could drain it first.
    MaximalObject object{name, std::move(members)};
    objects_.emplace(std::move(name), std::move(object));
}

std::set<std::string> Catalog::attribute_homes(std::string_view attr) const {
    std::set<std::string> homes;
    for (const auto& [name, schema] : relations_) {
        if (schema.has_attribute(attr)) homes.insert(name);
    }
    return homes;
}

const RelationSchema* Catalog::find_relation(std::string_view name) const {
    auto it = relations_.find(std::string(name));
    return it == relations_.end() ? nullptr : &it->second;
}

const RelationSchema& Catalog::relation(std::string_view name) const {
    const RelationSchema* schema = find_relation(name);
    if (!schema) {
        throw Error(ErrorCode::UnknownRelation, "unknown relation: " + std::string(name));
    }
    return *schema;
}

bool relations_connected(const Catalog& catalog, const std::set<std::string>& members) {
    if (members.empty()) return false;
    std::vector<const RelationSchema*> schemas;
    schemas.reserve(members.size());
    for (const auto& member : members) {
        schemas.push_back(&catalog.relation(member));
    }
    auto share_attribute = [](const RelationSchema& a, const RelationSchema& b) {
        for (const auto& attr : a.attributes) {
            if (b.has_attribute(attr.name)) return true;
        }
        return false;
    };

    std::vector<bool> reached(schemas.size(), false);
    std::deque<std::size_t> frontier{0};
    reached[0] = true;
    std::size_t seen = 1;
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < schemas.size(); ++i) {
            if (!reached[i] && share_attribute(*schemas[cur], *schemas[i])) {
                reached[i] = true;
                ++seen;
                frontier.push_back(i);
            }
        }
    }
    return seen == schemas.size();
}

}  // namespace rosi
