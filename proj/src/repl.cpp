#include "rosi/repl.hpp"

#include <set>
#include <sstream>

#include "rosi/error.hpp"
#include "rosi/executor.hpp"
#include "rosi/parser.hpp"
#include "rosi/planner.hpp"
#include "rosi/urm.hpp"

namespace rosi {

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string word;
    while (in >> word) words.push_back(word);
    return words;
}

std::string schema_line(const RelationSchema& schema) {
    std::string out = schema.name + "(";
    for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
        if (i) out += ", ";
        out += schema.attributes[i].name;
        out += ":";
        out += attr_type_name(schema.attributes[i].type);
    }
    out += ")";
    return out;
}

ReplResult run_meta_command(const std::vector<std::string>& words, Session& session) {
    ReplResult result;
    const std::string& command = words[0];

    if (command == ".quit") {
        result.quit = true;
        return result;
    }
    if (command == ".tables") {
        for (const auto& [name, schema] : session.catalog.relations()) {
            (void)schema;
            result.output += name + "\n";
        }
        return result;
    }
    if (command == ".schema") {
        if (words.size() > 1) {
            result.output = schema_line(session.catalog.relation(words[1])) + "\n";
            return result;
        }
        for (const auto& [name, schema] : session.catalog.relations()) {
            (void)name;
            result.output += schema_line(schema) + "\n";
        }
        return result;
    }
    if (command == ".maxobjects") {
        if (session.catalog.maximal_objects().empty()) {
            result.output = "(no maximal objects)\n";
            return result;
        }
        for (const auto& [name, object] : session.catalog.maximal_objects()) {
            result.output += name + ":";
            for (const auto& member : object.members) result.output += " " + member;
            result.output += "\n";
        }
        return result;
    }
    if (command == ".connections") {
        if (words.size() < 2) {
            result.diagnostics = "error: .connections needs at least one attribute\n";
            return result;
        }
        std::set<std::string> attrs(words.begin() + 1, words.end());
        for (const auto& connection : minimal_connections(attrs, session.catalog)) {
            result.output += "{";
            for (std::size_t i = 0; i < connection.relations.size(); ++i) {
                if (i) result.output += ", ";
                result.output += connection.relations[i];
            }
            result.output += "}\n";
        }
        return result;
    }
    if (command == ".format") {
        OutputFormat format;
        if (words.size() != 2 || !parse_output_format(words[1], format)) {
            result.diagnostics = "error: usage: .format table|csv|jsonl\n";
            return result;
        }
        session.format = format;
        return result;
    }
    result.diagnostics = "error: unknown command: " + command + "\n";
    return result;
}

ReplResult run_query_line(const std::string& line, Session& session) {
    ReplResult result;
    SelectStmt stmt = parse_query(line);
    PlanPtr plan = push_down_predicates(plan_query(stmt, session.catalog));
    Diagnostics diag;
    Relation relation = execute(*plan, session.providers, diag);
    for (const auto& warning : diag.warnings) {
        result.diagnostics += "warning: " + warning + "\n";
        ++session.warnings_emitted;
    }
    result.output = render_relation(relation, session.format);
    return result;
}

}  // namespace

ReplResult repl_step(const std::string& line, Session& session) {
    std::string trimmed = trim(line);
    if (trimmed.empty()) return {};

    if (trimmed[0] == '.') {
        try {
            return run_meta_command(split_words(trimmed), session);
        } catch (const Error& e) {
            ReplResult result;
            result.diagnostics = std::string("error: ") + error_code_name(e.code()) + ": " +
                                 e.what() + "\n";
            return result;
        }
    }

    try {
        return run_query_line(trimmed, session);
    } catch (const Error& e) {
        ReplResult result;
        result.diagnostics = format_query_error(e, trimmed);
        return result;
    }
}

}  // namespace rosi
