#include "rosi/eval.hpp"

#include <stdexcept>

namespace rosi {

namespace {

const Value& resolve_operand(const Expr& operand, const Tuple& tuple,
                             const RelationSchema& schema) {
    if (operand.kind == Expr::Kind::Column) {
        return tuple[schema.index_of(operand.column)];
    }
    return operand.literal;
}

TruthValue truth_of(bool b) { return b ? TruthValue::True : TruthValue::False; }

TruthValue eval_compare(const Expr& expr, const Tuple& tuple, const RelationSchema& schema) {
    const Value& lhs = resolve_operand(*expr.children[0], tuple, schema);
    const Value& rhs = resolve_operand(*expr.children[1], tuple, schema);
    if (lhs.is_null() || rhs.is_null()) return TruthValue::Unknown;
    int cmp = compare_values(lhs, rhs);
    switch (expr.op) {
        case CompareOp::Eq: return truth_of(cmp == 0);
        case CompareOp::Ne: return truth_of(cmp != 0);
        case CompareOp::Lt: return truth_of(cmp < 0);
        case CompareOp::Le: return truth_of(cmp <= 0);
        case CompareOp::Gt: return truth_of(cmp > 0);
        case CompareOp::Ge: return truth_of(cmp >= 0);
    }
    return TruthValue::Unknown;
}

}  // namespace

TruthValue kleene_not(TruthValue v) {
    switch (v) {
        case TruthValue::True: return TruthValue::False;
        case TruthValue::False: return TruthValue::True;
        case TruthValue::Unknown: return TruthValue::Unknown;
    }
    return TruthValue::Unknown;
}

TruthValue kleene_and(TruthValue a, TruthValue b) {
    if (a == TruthValue::False || b == TruthValue::False) return TruthValue::False;
    if (a == TruthValue::Unknown || b == TruthValue::Unknown) return TruthValue::Unknown;
    return TruthValue::True;
}

TruthValue kleene_or(TruthValue a, TruthValue b) {
    if (a == TruthValue::True || b == TruthValue::True) return TruthValue::True;
    if (a == TruthValue::Unknown || b == TruthValue::Unknown) return TruthValue::Unknown;
    return TruthValue::False;
}

bool like_match(std::string_view subject, std::string_view pattern) {
    // Two-pointer scan with single backtrack point per '%', linear in practice.
    std::size_t s = 0;
    std::size_t p = 0;
    std::size_t star_p = std::string_view::npos;
    std::size_t star_s = 0;
    while (s < subject.size()) {
        if (p < pattern.size() && (pattern[p] == '_' || pattern[p] == subject[s])) {
            ++s;
            ++p;
        } else if (p < pattern.size() && pattern[p] == '%') {
            star_p = p++;
            star_s = s;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            s = ++star_s;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '%') ++p;
    return p == pattern.size();
}

TruthValue eval_expr(const Expr& expr, const Tuple& tuple, const RelationSchema& schema) {
    switch (expr.kind) {
        case Expr::Kind::Compare:
            return eval_compare(expr, tuple, schema);
        case Expr::Kind::Like: {
            const Value& subject = tuple[schema.index_of(expr.column)];
            if (subject.is_null()) return TruthValue::Unknown;
            return truth_of(like_match(subject.as_text(), expr.pattern));
        }
        case Expr::Kind::IsNull: {
            bool is_null = tuple[schema.index_of(expr.column)].is_null();
            return truth_of(expr.negated ? !is_null : is_null);
        }
        case Expr::Kind::Not:
            return kleene_not(eval_expr(*expr.children[0], tuple, schema));
        case Expr::Kind::And: {
            TruthValue acc = TruthValue::True;
            for (const auto& child : expr.children) {
                acc = kleene_and(acc, eval_expr(*child, tuple, schema));
                if (acc == TruthValue::False) return acc;
            }
            return acc;
        }
        case Expr::Kind::Or: {
            TruthValue acc = TruthValue::False;
            for (const auto& child : expr.children) {
                acc = kleene_or(acc, eval_expr(*child, tuple, schema));
                if (acc == TruthValue::True) return acc;
            }
            return acc;
        }
        case Expr::Kind::Column:
        case Expr::Kind::Literal:
            break;
    }
    throw std::logic_error("eval_expr: bare operand is not a predicate");
}

bool eval_predicate(const Expr& expr, const Tuple& tuple, const RelationSchema& schema) {
    return eval_expr(expr, tuple, schema) == TruthValue::True;
}

}  // namespace rosi
