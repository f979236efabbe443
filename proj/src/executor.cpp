#include "rosi/executor.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "rosi/error.hpp"
#include "rosi/eval.hpp"

namespace rosi {

namespace {

struct ExecContext {
    const ProviderSet& providers;
    Diagnostics& diag;
    // Single-scan plans propagate ProviderUnavailable; multi-scan plans
    // degrade the failed scan to empty with a warning so the other relations
    // still produce output.
    bool degrade_unavailable;
};

class Operator {
public:
    virtual ~Operator() = default;
    virtual std::optional<Tuple> next() = 0;
};

using OperatorPtr = std::unique_ptr<Operator>;

class ScanOp : public Operator {
public:
    ScanOp(const PlanNode& node, ExecContext& ctx) {
        try {
            relation_ = ctx.providers.snapshot(node.relation, node.pushed.get(), ctx.diag);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ProviderUnavailable || !ctx.degrade_unavailable) throw;
            ctx.diag.warn("relation '" + node.relation + "' unavailable, treated as empty: " +
                          e.what());
            ctx.diag.count("scans.degraded");
            relation_.schema = node.output_schema;
        }
    }

    std::optional<Tuple> next() override {
        if (cursor_ >= relation_.tuples.size()) return std::nullopt;
        return std::move(relation_.tuples[cursor_++]);
    }

private:
    Relation relation_;
    std::size_t cursor_ = 0;
};

class FilterOp : public Operator {
public:
    FilterOp(const PlanNode& node, OperatorPtr child)
        : predicate_(node.predicate), schema_(node.output_schema), child_(std::move(child)) {}

    std::optional<Tuple> next() override {
        while (auto tuple = child_->next()) {
            if (eval_predicate(*predicate_, *tuple, schema_)) return tuple;
        }
        return std::nullopt;
    }

private:
    ExprPtr predicate_;
    RelationSchema schema_;
    OperatorPtr child_;
};

class ProjectOp : public Operator {
public:
    ProjectOp(const PlanNode& node, const RelationSchema& child_schema, OperatorPtr child)
        : child_(std::move(child)) {
        for (const auto& column : node.columns) {
            indices_.push_back(child_schema.index_of(column));
        }
    }

    std::optional<Tuple> next() override {
        auto tuple = child_->next();
        if (!tuple) return std::nullopt;
        Tuple out;
        for (std::size_t index : indices_) out.push_back((*tuple)[index]);
        return out;
    }

private:
    std::vector<std::size_t> indices_;
    OperatorPtr child_;
};

// Hash join on the shared attributes. The right side is buffered as the
// build side; the left side streams. Tuples with a NULL in any join column
// never match anything (NULL = NULL is Unknown).
class JoinOp : public Operator {
public:
    JoinOp(const PlanNode& node, OperatorPtr left, OperatorPtr right) : left_(std::move(left)) {
        const RelationSchema& ls = node.children[0]->output_schema;
        const RelationSchema& rs = node.children[1]->output_schema;
        for (std::size_t i = 0; i < ls.attributes.size(); ++i) {
            if (rs.has_attribute(ls.attributes[i].name)) {
                left_key_.push_back(i);
                right_key_.push_back(rs.index_of(ls.attributes[i].name));
            }
        }
        for (std::size_t i = 0; i < rs.attributes.size(); ++i) {
            if (!ls.has_attribute(rs.attributes[i].name)) right_carry_.push_back(i);
        }
        while (auto tuple = right->next()) {
            auto key = key_of(*tuple, right_key_);
            if (!key) continue;
            build_[std::move(*key)].push_back(std::move(*tuple));
        }
    }

    std::optional<Tuple> next() override {
        while (true) {
            if (!pending_.empty()) {
                Tuple out = std::move(pending_.front());
                pending_.pop_front();
                return out;
            }
            auto left = left_->next();
            if (!left) return std::nullopt;
            auto key = key_of(*left, left_key_);
            if (!key) continue;
            auto it = build_.find(*key);
            if (it == build_.end()) continue;
            for (const Tuple& right : it->second) {
                Tuple combined = *left;
                for (std::size_t index : right_carry_) combined.push_back(right[index]);
                pending_.push_back(std::move(combined));
            }
        }
    }

private:
    static std::optional<std::vector<Value>> key_of(const Tuple& tuple,
                                                    const std::vector<std::size_t>& indices) {
        std::vector<Value> key;
        for (std::size_t index : indices) {
            if (tuple[index].is_null()) return std::nullopt;
            key.push_back(tuple[index]);
        }
        return key;
    }

    OperatorPtr left_;
    std::vector<std::size_t> left_key_;
    std::vector<std::size_t> right_key_;
    std::vector<std::size_t> right_carry_;
    std::unordered_map<std::vector<Value>, std::vector<Tuple>, ValueVectorHash> build_;
    std::deque<Tuple> pending_;
};

class SortOp : public Operator {
public:
    SortOp(const PlanNode& node, OperatorPtr child) {
        std::vector<std::pair<std::size_t, bool>> keys;
        for (const auto& key : node.keys) {
            keys.emplace_back(node.output_schema.index_of(key.column), key.descending);
        }
        while (auto tuple = child->next()) rows_.push_back(std::move(*tuple));
        std::sort(rows_.begin(), rows_.end(), [&keys](const Tuple& a, const Tuple& b) {
            for (const auto& [index, descending] : keys) {
                int cmp = compare_values(a[index], b[index]);
                if (cmp != 0) return descending ? cmp > 0 : cmp < 0;
            }
            // Full-tuple tie-break keeps the output deterministic even for
            // equal keys.
            return compare_tuples(a, b) < 0;
        });
    }

    std::optional<Tuple> next() override {
        if (cursor_ >= rows_.size()) return std::nullopt;
        return std::move(rows_[cursor_++]);
    }

private:
    std::vector<Tuple> rows_;
    std::size_t cursor_ = 0;
};

class LimitOp : public Operator {
public:
    LimitOp(const PlanNode& node, OperatorPtr child)
        : remaining_(node.limit), child_(std::move(child)) {}

    std::optional<Tuple> next() override {
        if (remaining_ <= 0) return std::nullopt;
        --remaining_;
        return child_->next();
    }

private:
    std::int64_t remaining_;
    OperatorPtr child_;
};

// Streaming dedup: emits the first occurrence of each tuple, preserving the
// child's order for the survivors.
class DistinctOp : public Operator {
public:
    explicit DistinctOp(OperatorPtr child) : child_(std::move(child)) {}

    std::optional<Tuple> next() override {
        while (auto tuple = child_->next()) {
            if (seen_.insert(*tuple).second) return tuple;
        }
        return std::nullopt;
    }

private:
    OperatorPtr child_;
    std::unordered_set<Tuple, TupleHash> seen_;
};

class UnionAllOp : public Operator {
public:
    explicit UnionAllOp(std::vector<OperatorPtr> children) : children_(std::move(children)) {}

    std::optional<Tuple> next() override {
        while (current_ < children_.size()) {
            if (auto tuple = children_[current_]->next()) return tuple;
            ++current_;
        }
        return std::nullopt;
    }

private:
    std::vector<OperatorPtr> children_;
    std::size_t current_ = 0;
};

OperatorPtr build_operator(const PlanNode& node, ExecContext& ctx) {
    switch (node.kind) {
        case PlanNode::Kind::Scan:
            return std::make_unique<ScanOp>(node, ctx);
        case PlanNode::Kind::Filter:
            return std::make_unique<FilterOp>(node, build_operator(*node.children[0], ctx));
        case PlanNode::Kind::Project:
            return std::make_unique<ProjectOp>(node, node.children[0]->output_schema,
                                               build_operator(*node.children[0], ctx));
        case PlanNode::Kind::NaturalJoin:
            return std::make_unique<JoinOp>(node, build_operator(*node.children[0], ctx),
                                            build_operator(*node.children[1], ctx));
        case PlanNode::Kind::Sort:
            return std::make_unique<SortOp>(node, build_operator(*node.children[0], ctx));
        case PlanNode::Kind::Limit:
            return std::make_unique<LimitOp>(node, build_operator(*node.children[0], ctx));
        case PlanNode::Kind::Distinct:
            return std::make_unique<DistinctOp>(build_operator(*node.children[0], ctx));
        case PlanNode::Kind::UnionAll: {
            std::vector<OperatorPtr> children;
            for (const auto& child : node.children) {
                children.push_back(build_operator(*child, ctx));
            }
            return std::make_unique<UnionAllOp>(std::move(children));
        }
    }
    throw std::logic_error("build_operator: unknown node kind");
}

}  // namespace

Relation natural_join(const Relation& left, const Relation& right) {
    PlanPtr plan = make_natural_join(make_scan(left.schema), make_scan(right.schema));

    // Reuse the join operator against two pre-materialized inputs.
    class VectorOp : public Operator {
    public:
        explicit VectorOp(const std::vector<Tuple>& rows) : rows_(rows) {}
        std::optional<Tuple> next() override {
            if (cursor_ >= rows_.size()) return std::nullopt;
            return rows_[cursor_++];
        }

    private:
        const std::vector<Tuple>& rows_;
        std::size_t cursor_ = 0;
    };

    JoinOp join(*plan, std::make_unique<VectorOp>(left.tuples),
                std::make_unique<VectorOp>(right.tuples));
    Relation out;
    out.schema = plan->output_schema;
    while (auto tuple = join.next()) out.tuples.push_back(std::move(*tuple));
    return out;
}

Relation execute(const PlanNode& plan, const ProviderSet& providers, Diagnostics& diag) {
    ExecContext ctx{providers, diag, count_scans(plan) > 1};
    OperatorPtr root = build_operator(plan, ctx);
    Relation out;
    out.schema = plan.output_schema;
    while (auto tuple = root->next()) out.tuples.push_back(std::move(*tuple));
    return out;
}

}  // namespace rosi
