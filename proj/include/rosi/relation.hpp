#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rosi/catalog.hpp"

namespace rosi {

// Distinct from plain int64 so a Value's tag identifies its column type.
struct Timestamp {
    std::int64_t seconds = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// A single typed cell: NULL or one of the four column types.
struct Value {
    enum class Tag { Null, Bool, Int, Text, Timestamp };

    // Alternative order mirrors Tag.
    using Storage = std::variant<std::monostate, bool, std::int64_t, std::string, Timestamp>;
    Storage data;

    static Value null() { return Value{}; }
    static Value boolean(bool b) { return Value{Storage{b}}; }
    static Value integer(std::int64_t i) { return Value{Storage{i}}; }
    static Value text(std::string s) { return Value{Storage{std::move(s)}}; }
    static Value timestamp(std::int64_t seconds) { return Value{Storage{Timestamp{seconds}}}; }

    Tag tag() const { return static_cast<Tag>(data.index()); }
    bool is_null() const { return data.index() == 0; }

    bool as_bool() const { return std::get<bool>(data); }
    std::int64_t as_int() const { return std::get<std::int64_t>(data); }
    const std::string& as_text() const { return std::get<std::string>(data); }
    std::int64_t as_timestamp() const { return std::get<Timestamp>(data).seconds; }

    // Exact equality: tags must match and NULL equals NULL. This is the
    // deduplication notion used by DISTINCT, not comparison semantics.
    friend bool operator==(const Value&, const Value&) = default;
};

// True iff a non-NULL value's tag matches the declared column type.
bool value_matches_type(const Value& value, AttrType type);

// Total order used by ORDER BY, canonical row sorting, and tie-breaking:
// NULL first, BOOL false<true, INT/TIMESTAMP numeric (interchangeably),
// TEXT bytewise. Returns <0, 0, >0.
int compare_values(const Value& a, const Value& b);

struct Tuple {
    std::vector<Value> values;

    std::size_t size() const { return values.size(); }
    const Value& operator[](std::size_t i) const { return values[i]; }
    Value& operator[](std::size_t i) { return values[i]; }
    void push_back(Value v) { values.push_back(std::move(v)); }

    friend bool operator==(const Tuple&, const Tuple&) = default;
};

// Full-tuple lexicographic comparison via compare_values.
int compare_tuples(const Tuple& a, const Tuple& b);

struct ValueHash {
    std::size_t operator()(const Value& v) const;
};

struct TupleHash {
    std::size_t operator()(const Tuple& t) const;
};

struct ValueVectorHash {
    std::size_t operator()(const std::vector<Value>& vs) const;
};

// A schema plus a bag of tuples, positionally aligned.
struct Relation {
    RelationSchema schema;
    std::vector<Tuple> tuples;

    // Throws InvalidSchema when a tuple's arity or a value tag disagrees with
    // the schema.
    void validate() const;
};

// Sorts tuples into the canonical (full-tuple lexicographic) order in place.
void sort_tuples_canonically(std::vector<Tuple>& tuples);

// Bag equality: same schema attributes and the same multiset of tuples.
bool relations_equal_as_bags(const Relation& a, const Relation& b);

}  // namespace rosi
