#include "rosi/relation.hpp"

#include <algorithm>
#include <functional>

namespace rosi {

namespace {

void hash_combine(std::size_t& seed, std::size_t h) {
    seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

int compare_int64(std::int64_t a, std::int64_t b) {
    return a < b ? -1 : (a > b ? 1 : 0);
}

bool is_numeric(Value::Tag tag) {
    return tag == Value::Tag::Int || tag == Value::Tag::Timestamp;
}

}  // namespace

bool value_matches_type(const Value& value, AttrType type) {
    switch (value.tag()) {
        case Value::Tag::Null: return true;
        case Value::Tag::Bool: return type == AttrType::Bool;
        case Value::Tag::Int: return type == AttrType::Int;
        case Value::Tag::Text: return type == AttrType::Text;
        case Value::Tag::Timestamp: return type == AttrType::Timestamp;
    }
    return false;
}

int compare_values(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) {
        return (a.is_null() ? 0 : 1) - (b.is_null() ? 0 : 1);
    }
    // INT and TIMESTAMP compare numerically with each other (integer literals
    // filter timestamp columns); other cross-tag orderings fall back to tag
    // rank, which typed columns never reach.
    if (is_numeric(a.tag()) && is_numeric(b.tag())) {
        std::int64_t av = a.tag() == Value::Tag::Int ? a.as_int() : a.as_timestamp();
        std::int64_t bv = b.tag() == Value::Tag::Int ? b.as_int() : b.as_timestamp();
        return compare_int64(av, bv);
    }
    if (a.tag() != b.tag()) {
        return static_cast<int>(a.tag()) - static_cast<int>(b.tag());
    }
    switch (a.tag()) {
        case Value::Tag::Bool:
            return static_cast<int>(a.as_bool()) - static_cast<int>(b.as_bool());
        case Value::Tag::Text: {
            int c = a.as_text().compare(b.as_text());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        default: return 0;  // unreachable: Null and numeric handled above
    }
}

int compare_tuples(const Tuple& a, const Tuple& b) {
    std::size_t n = std::min(a.values.size(), b.values.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare_values(a.values[i], b.values[i]);
        if (c != 0) return c;
    }
    return compare_int64(static_cast<std::int64_t>(a.values.size()),
                         static_cast<std::int64_t>(b.values.size()));
}

std::size_t ValueHash::operator()(const Value& v) const {
    std::size_t seed = v.data.index();
    switch (v.tag()) {
        case Value::Tag::Null: break;
        case Value::Tag::Bool: hash_combine(seed, std::hash<bool>{}(v.as_bool())); break;
        case Value::Tag::Int: hash_combine(seed, std::hash<std::int64_t>{}(v.as_int())); break;
        case Value::Tag::Text: hash_combine(seed, std::hash<std::string>{}(v.as_text())); break;
        case Value::Tag::Timestamp:
            hash_combine(seed, std::hash<std::int64_t>{}(v.as_timestamp()));
            break;
    }
    return seed;
}

std::size_t TupleHash::operator()(const Tuple& t) const {
    return ValueVectorHash{}(t.values);
}

std::size_t ValueVectorHash::operator()(const std::vector<Value>& vs) const {
    std::size_t seed = vs.size();
    ValueHash h;
    for (const Value& v : vs) hash_combine(seed, h(v));
    return seed;
}

void Relation::validate() const {
    for (const Tuple& t : tuples) {
        if (t.values.size() != schema.attributes.size()) {
            throw Error(ErrorCode::InvalidSchema,
                        "tuple arity " + std::to_string(t.values.size()) +
                            " does not match schema " + schema.name + " (" +
                            std::to_string(schema.attributes.size()) + " attributes)");
        }
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            if (!value_matches_type(t.values[i], schema.attributes[i].type)) {
                throw Error(ErrorCode::InvalidSchema,
                            "value tag does not match " + schema.name + "." +
                                schema.attributes[i].name + ":" +
                                attr_type_name(schema.attributes[i].type));
            }
        }
    }
}

void sort_tuples_canonically(std::vector<Tuple>& tuples) {
    std::sort(tuples.begin(), tuples.end(),
              [](const Tuple& a, const Tuple& b) { return compare_tuples(a, b) < 0; });
}

bool relations_equal_as_bags(const Relation& a, const Relation& b) {
    if (a.schema.attributes != b.schema.attributes) return false;
    std::vector<Tuple> at = a.tuples;
    std::vector<Tuple> bt = b.tuples;
    sort_tuples_canonically(at);
    sort_tuples_canonically(bt);
    return at == bt;
}

}  // namespace rosi
