#include "rosi/parser.hpp"

#include <charconv>

#include "rosi/error.hpp"
#include "rosi/lexer.hpp"

namespace rosi {

namespace {

// Binding strength used by the canonical printer: OR < AND < NOT < atoms.
int expr_precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Or: return 1;
        case Expr::Kind::And: return 2;
        case Expr::Kind::Not: return 3;
        default: return 4;
    }
}

std::string quote_string(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "''";
        else out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string render_literal(const Value& v) {
    switch (v.tag()) {
        case Value::Tag::Null: return "NULL";
        case Value::Tag::Bool: return v.as_bool() ? "TRUE" : "FALSE";
        case Value::Tag::Int: return std::to_string(v.as_int());
        case Value::Tag::Text: return quote_string(v.as_text());
        case Value::Tag::Timestamp: return std::to_string(v.as_timestamp());
    }
    return "NULL";
}

std::string render_operand(const Expr& e) {
    if (e.kind == Expr::Kind::Column) return e.column;
    return render_literal(e.literal);
}

std::string render_wrapped(const Expr& e, int parent_precedence) {
    if (expr_precedence(e) <= parent_precedence) {
        return "(" + render_expr(e) + ")";
    }
    return render_expr(e);
}

class Parser {
public:
    Parser(std::string_view text) : end_offset_(text.size()), tokens_(tokenize(text)) {}

    SelectStmt parse() {
        SelectStmt stmt;
        expect_keyword("SELECT");
        stmt.distinct = accept_keyword("DISTINCT");

        std::size_t star_offset = current_offset();
        if (accept_symbol("*")) {
            stmt.star = true;
        } else {
            stmt.projection.push_back(expect_identifier("column name"));
            while (accept_symbol(",")) {
                stmt.projection.push_back(expect_identifier("column name"));
            }
        }

        // Clause order is fixed; whatever clause we are past can no longer
        // appear, which keeps the expected-set in errors honest.
        int stage = 0;
        while (!at_end()) {
            if (stage < 1 && accept_keyword("FROM")) {
                std::vector<std::string> rels;
                rels.push_back(expect_identifier("relation name"));
                while (accept_symbol(",")) {
                    rels.push_back(expect_identifier("relation name"));
                }
                stmt.from = std::move(rels);
                stage = 1;
                continue;
            }
            if (stage < 2 && accept_keyword("WHERE")) {
                stmt.where = parse_or();
                stage = 2;
                continue;
            }
            if (stage < 3 && accept_keyword("ORDER")) {
                expect_keyword("BY");
                stmt.order_by.push_back(parse_order_key());
                while (accept_symbol(",")) {
                    stmt.order_by.push_back(parse_order_key());
                }
                stage = 3;
                continue;
            }
            if (stage < 4 && accept_keyword("LIMIT")) {
                stmt.limit = expect_int_literal();
                stage = 4;
                continue;
            }
            fail(expected_clauses(stage));
        }

        if (stmt.star && !stmt.from) {
            throw Error(ErrorCode::ParseError, "SELECT * requires a FROM clause", star_offset);
        }
        return stmt;
    }

private:
    std::size_t end_offset_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token* current() const { return at_end() ? nullptr : &tokens_[pos_]; }

    std::size_t current_offset() const { return at_end() ? end_offset_ : tokens_[pos_].offset; }

    [[noreturn]] void fail(const std::string& expected) {
        throw Error(ErrorCode::ParseError, "expected " + expected, current_offset());
    }

    static std::string expected_clauses(int stage) {
        std::string expected;
        if (stage < 1) expected += "FROM, ";
        if (stage < 2) expected += "WHERE, ";
        if (stage < 3) expected += "ORDER BY, ";
        if (stage < 4) expected += "LIMIT, ";
        return expected + "or end of query";
    }

    bool accept_keyword(std::string_view kw) {
        const Token* t = current();
        if (t && t->kind == TokenKind::Keyword && t->text == kw) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) fail(std::string(kw));
    }

    bool accept_symbol(std::string_view sym) {
        const Token* t = current();
        if (t && t->kind == TokenKind::Symbol && t->text == sym) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_symbol(std::string_view sym, const std::string& what) {
        if (!accept_symbol(sym)) fail(what);
    }

    std::string expect_identifier(const std::string& what) {
        const Token* t = current();
        if (t && t->kind == TokenKind::Identifier) {
            ++pos_;
            return t->text;
        }
        fail(what);
    }

    std::int64_t expect_int_literal() {
        const Token* t = current();
        if (!t || t->kind != TokenKind::IntLiteral) fail("integer literal");
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t->text.data(), t->text.data() + t->text.size(), value);
        if (ec != std::errc{} || ptr != t->text.data() + t->text.size()) {
            throw Error(ErrorCode::ParseError, "integer literal out of range", t->offset);
        }
        ++pos_;
        return value;
    }

    OrderKey parse_order_key() {
        OrderKey key;
        key.column = expect_identifier("column name");
        if (accept_keyword("DESC")) key.descending = true;
        else accept_keyword("ASC");
        return key;
    }

    ExprPtr parse_or() {
        std::vector<ExprPtr> parts;
        parts.push_back(parse_and());
        while (accept_keyword("OR")) parts.push_back(parse_and());
        if (parts.size() == 1) return parts[0];
        return Expr::make_or(std::move(parts));
    }

    ExprPtr parse_and() {
        std::vector<ExprPtr> parts;
        parts.push_back(parse_not());
        while (accept_keyword("AND")) parts.push_back(parse_not());
        if (parts.size() == 1) return parts[0];
        return Expr::make_and(std::move(parts));
    }

    ExprPtr parse_not() {
        if (accept_keyword("NOT")) return Expr::make_not(parse_primary());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (accept_symbol("(")) {
            ExprPtr inner = parse_or();
            expect_symbol(")", "')'");
            return inner;
        }
        const Token* t = current();
        if (t && t->kind == TokenKind::Identifier) {
            std::string column = t->text;
            ++pos_;
            if (accept_keyword("LIKE")) {
                const Token* pat = current();
                if (!pat || pat->kind != TokenKind::StringLiteral) {
                    fail("string literal after LIKE");
                }
                ++pos_;
                return Expr::make_like(std::move(column), pat->text);
            }
            if (accept_keyword("IS")) {
                bool negated = accept_keyword("NOT");
                expect_keyword("NULL");
                return Expr::make_is_null(std::move(column), negated);
            }
            CompareOp op = expect_compare_op();
            return Expr::make_compare(op, Expr::make_column(std::move(column)), parse_operand());
        }
        if (is_literal_token(t)) {
            ExprPtr lhs = parse_literal();
            CompareOp op = expect_compare_op();
            return Expr::make_compare(op, std::move(lhs), parse_operand());
        }
        fail("a predicate: '(', column name, or literal");
    }

    static bool is_literal_token(const Token* t) {
        if (!t) return false;
        if (t->kind == TokenKind::IntLiteral || t->kind == TokenKind::StringLiteral) return true;
        return t->kind == TokenKind::Keyword &&
               (t->text == "TRUE" || t->text == "FALSE" || t->text == "NULL");
    }

    ExprPtr parse_literal() {
        const Token* t = current();
        if (t && t->kind == TokenKind::IntLiteral) {
            return Expr::make_literal(Value::integer(expect_int_literal()));
        }
        if (t && t->kind == TokenKind::StringLiteral) {
            ++pos_;
            return Expr::make_literal(Value::text(t->text));
        }
        if (accept_keyword("TRUE")) return Expr::make_literal(Value::boolean(true));
        if (accept_keyword("FALSE")) return Expr::make_literal(Value::boolean(false));
        if (accept_keyword("NULL")) return Expr::make_literal(Value::null());
        fail("literal");
    }

    ExprPtr parse_operand() {
        const Token* t = current();
        if (t && t->kind == TokenKind::Identifier) {
            ++pos_;
            return Expr::make_column(t->text);
        }
        if (is_literal_token(t)) return parse_literal();
        fail("column name or literal");
    }

    CompareOp expect_compare_op() {
        const Token* t = current();
        if (t && t->kind == TokenKind::Symbol) {
            if (t->text == "=") { ++pos_; return CompareOp::Eq; }
            if (t->text == "<>") { ++pos_; return CompareOp::Ne; }
            if (t->text == "<") { ++pos_; return CompareOp::Lt; }
            if (t->text == "<=") { ++pos_; return CompareOp::Le; }
            if (t->text == ">") { ++pos_; return CompareOp::Gt; }
            if (t->text == ">=") { ++pos_; return CompareOp::Ge; }
        }
        fail("comparison operator, LIKE, or IS");
    }
};

}  // namespace

SelectStmt parse_query(std::string_view text) {
    return Parser(text).parse();
}

std::string render_expr(const Expr& expr) {
    switch (expr.kind) {
        case Expr::Kind::Column:
        case Expr::Kind::Literal:
            return render_operand(expr);
        case Expr::Kind::Compare:
            return render_operand(*expr.children[0]) + " " + compare_op_text(expr.op) + " " +
                   render_operand(*expr.children[1]);
        case Expr::Kind::Like:
            return expr.column + " LIKE " + quote_string(expr.pattern);
        case Expr::Kind::IsNull:
            return expr.column + (expr.negated ? " IS NOT NULL" : " IS NULL");
        case Expr::Kind::Not:
            return "NOT " + render_wrapped(*expr.children[0], 3);
        case Expr::Kind::And: {
            std::string out;
            for (std::size_t i = 0; i < expr.children.size(); ++i) {
                if (i) out += " AND ";
                out += render_wrapped(*expr.children[i], 2);
            }
            return out;
        }
        case Expr::Kind::Or: {
            std::string out;
            for (std::size_t i = 0; i < expr.children.size(); ++i) {
                if (i) out += " OR ";
                out += render_wrapped(*expr.children[i], 1);
            }
            return out;
        }
    }
    return "";
}

std::string render_query(const SelectStmt& stmt) {
    std::string out = "SELECT ";
    if (stmt.distinct) out += "DISTINCT ";
    if (stmt.star) {
        out += "*";
    } else {
        for (std::size_t i = 0; i < stmt.projection.size(); ++i) {
            if (i) out += ", ";
            out += stmt.projection[i];
        }
    }
    if (stmt.from) {
        out += " FROM ";
        for (std::size_t i = 0; i < stmt.from->size(); ++i) {
            if (i) out += ", ";
            out += (*stmt.from)[i];
        }
    }
    if (stmt.where) out += " WHERE " + render_expr(*stmt.where);
    if (!stmt.order_by.empty()) {
        out += " ORDER BY ";
        for (std::size_t i = 0; i < stmt.order_by.size(); ++i) {
            if (i) out += ", ";
            out += stmt.order_by[i].column;
            out += stmt.order_by[i].descending ? " DESC" : " ASC";
        }
    }
    if (stmt.limit) out += " LIMIT " + std::to_string(*stmt.limit);
    return out;
}

}  // namespace rosi
