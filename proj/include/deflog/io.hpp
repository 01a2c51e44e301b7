#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defaults.hpp"
#include "formula.hpp"
#include "parse.hpp"
#include "theory.hpp"

namespace deflog {

// Malformed input file; carries 1-based line and column.
class SyntaxError : public Error {
public:
    SyntaxError(std::string source, std::size_t line, std::size_t column,
                const std::string& what)
        : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                what),
          source_(std::move(source)), line_(line), column_(column) {}

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

struct TheoryDocument {
    std::vector<std::pair<Formula, std::size_t>> worldLines;    // formula, 1-based line
    std::vector<std::pair<Default, std::size_t>> defaultLines;

    DefaultTheory to_theory() const {
        DefaultTheory dt;
        for (const auto& [f, line] : worldLines)
            dt.world.insert(f);
        for (const auto& [d, line] : defaultLines)
            dt.defaults.push_back(d);
        return dt;
    }
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

inline std::size_t skip_spaces(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_space(s[pos]))
        ++pos;
    return pos;
}

// Trailing index (one past last non-space char) of s.
inline std::size_t rtrim_end(std::string_view s) {
    std::size_t end = s.size();
    while (end > 0 && is_space(s[end - 1]))
        --end;
    return end;
}

// Parses the formula occupying line[begin, end); errors carry the column
// within the full line.
inline Formula parse_piece(std::string_view line, std::size_t begin, std::size_t end,
                           const std::string& source, std::size_t lineno) {
    begin = skip_spaces(line, begin);
    std::size_t stop = end;
    while (stop > begin && is_space(line[stop - 1]))
        --stop;
    if (begin >= stop)
        throw SyntaxError(source, lineno, begin + 1, "expected a formula");
    try {
        return parse_formula(line.substr(begin, stop - begin));
    } catch (const ParseError& e) {
        throw SyntaxError(source, lineno, begin + e.offset() + 1, "invalid formula");
    }
}

} // namespace detail

// Parses the line-based theory format: `#` comments, blank lines, and
// statements `w <formula> .` or `d <prereq> : <just>(, <just>)* / <cons> .`
// with the prerequisite omitted when tautologically true and the
// justification list possibly empty. Structurally duplicate statements are
// rejected.
inline TheoryDocument parse_theory_document(const std::string& text, const std::string& source) {
    TheoryDocument doc;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++lineno;

        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::size_t start = detail::skip_spaces(line, 0);
        std::size_t end = detail::rtrim_end(line);
        if (start >= end)
            continue;

        if (line[end - 1] != '.')
            throw SyntaxError(source, lineno, end, "statement must end with '.'");
        std::size_t body_end = end - 1;

        char head = line[start];
        std::size_t after_head = start + 1;
        bool head_delimited = after_head >= body_end || detail::is_space(line[after_head]) ||
                              (head == 'd' && line[after_head] == ':');
        if (head == 'w' && head_delimited) {
            Formula f = detail::parse_piece(line, after_head, body_end, source, lineno);
            for (const auto& [g, prev] : doc.worldLines)
                if (g == f)
                    throw SyntaxError(source, lineno, start + 1,
                                      "duplicate world formula (already on line " +
                                          std::to_string(prev) + ")");
            doc.worldLines.emplace_back(f, lineno);
        } else if (head == 'd' && head_delimited) {
            std::size_t colon = line.find(':', after_head);
            if (colon == std::string_view::npos || colon >= body_end)
                throw SyntaxError(source, lineno, end, "expected ':' in default statement");
            std::size_t slash = line.find('/', colon + 1);
            if (slash == std::string_view::npos || slash >= body_end)
                throw SyntaxError(source, lineno, end, "expected '/' in default statement");

            Formula prereq = Formula::top();
            if (detail::skip_spaces(line, after_head) < colon)
                prereq = detail::parse_piece(line, after_head, colon, source, lineno);

            FormulaSet justs;
            std::size_t jpos = colon + 1;
            bool jempty = detail::skip_spaces(line, jpos) >= slash;
            while (!jempty && jpos < slash) {
                std::size_t comma = line.find(',', jpos);
                std::size_t jend = (comma == std::string_view::npos || comma > slash)
                                       ? slash
                                       : comma;
                justs.insert(detail::parse_piece(line, jpos, jend, source, lineno));
                jpos = jend + (jend == slash ? 0 : 1);
                if (jend == slash)
                    break;
            }

            Formula cons = detail::parse_piece(line, slash + 1, body_end, source, lineno);
            Default d(prereq, justs, cons);
            for (const auto& [e, prev] : doc.defaultLines)
                if (e == d)
                    throw SyntaxError(source, lineno, start + 1,
                                      "duplicate default (already on line " +
                                          std::to_string(prev) + ")");
            doc.defaultLines.emplace_back(std::move(d), lineno);
        } else {
            throw SyntaxError(source, lineno, start + 1,
                              "expected a 'w' or 'd' statement");
        }
    }
    return doc;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline DefaultTheory load_theory(const std::string& path) {
    return parse_theory_document(read_file(path), path).to_theory();
}

inline std::string serialize_default(const Default& d) {
    std::string out = "d ";
    if (!d.prereq().is(Conn::Top))
        out += to_string(d.prereq()) + " ";
    out += ":";
    for (std::size_t i = 0; i < d.justifications().size(); ++i)
        out += (i == 0 ? " " : ", ") + to_string(d.justifications()[i]);
    out += " / " + to_string(d.consequent()) + " .";
    return out;
}

inline std::string serialize_theory(const DefaultTheory& dt) {
    std::string out;
    for (const Formula& f : dt.world)
        out += "w " + to_string(f) + " .\n";
    for (const Default& d : dt.defaults)
        out += serialize_default(d) + "\n";
    return out;
}

struct FamilyDocument {
    std::vector<FormulaSet> blocks;
};

// Parses the family format: one or more `theory { <formula> . ... }` blocks,
// `#` comments allowed. Statements must close with '.' on their own line or
// share a line with the braces.
inline FamilyDocument parse_family_document(const std::string& text, const std::string& source) {
    FamilyDocument doc;
    bool inside = false;
    bool expect_open = false;
    FormulaSet current;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        bool last = eol == text.size();
        pos = eol + 1;
        ++lineno;

        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::size_t cur = detail::skip_spaces(line, 0);
        std::size_t end = detail::rtrim_end(line);
        while (cur < end) {
            if (expect_open) {
                if (line[cur] != '{')
                    throw SyntaxError(source, lineno, cur + 1, "expected '{' after 'theory'");
                expect_open = false;
                inside = true;
                ++cur;
            } else if (!inside) {
                if (line.substr(cur, 6) == "theory" &&
                    (cur + 6 >= end || detail::is_space(line[cur + 6]) ||
                     line[cur + 6] == '{')) {
                    expect_open = true;
                    cur += 6;
                } else {
                    throw SyntaxError(source, lineno, cur + 1, "expected 'theory'");
                }
            } else if (line[cur] == '}') {
                doc.blocks.push_back(current);
                current = FormulaSet{};
                inside = false;
                ++cur;
            } else {
                std::size_t dot = line.find('.', cur);
                if (dot == std::string_view::npos || dot >= end)
                    throw SyntaxError(source, lineno, end,
                                      "statement must end with '.' on the same line");
                current.insert(detail::parse_piece(line, cur, dot, source, lineno));
                cur = dot + 1;
            }
            cur = detail::skip_spaces(line, cur);
        }
        if (last)
            break;
    }
    if (inside || expect_open)
        throw SyntaxError(source, lineno, 1, "unterminated theory block");
    if (doc.blocks.empty())
        throw SyntaxError(source, lineno, 1, "at least one theory block is required");
    return doc;
}

inline TheoryFamily load_family(const std::string& path) {
    FamilyDocument doc = parse_family_document(read_file(path), path);
    std::vector<FinTheory> members;
    members.reserve(doc.blocks.size());
    for (const FormulaSet& gens : doc.blocks)
        members.emplace_back(gens);
    return TheoryFamily(std::move(members));    // rejects equal blocks
}

inline std::string serialize_family(const TheoryFamily& fam) {
    std::string out;
    for (const FinTheory& m : fam) {
        out += "theory {\n";
        for (const Formula& f : m.generators())
            out += "  " + to_string(f) + " .\n";
        out += "}\n";
    }
    return out;
}

// One `<formula> .` statement per line, `#` comments allowed.
inline FormulaSet parse_formula_list(const std::string& text, const std::string& source) {
    FormulaSet out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        bool last = eol == text.size();
        pos = eol + 1;
        ++lineno;

        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::size_t start = detail::skip_spaces(line, 0);
        std::size_t end = detail::rtrim_end(line);
        if (start < end) {
            if (line[end - 1] != '.')
                throw SyntaxError(source, lineno, end, "statement must end with '.'");
            out.insert(detail::parse_piece(line, start, end - 1, source, lineno));
        }
        if (last)
            break;
    }
    return out;
}

inline FormulaSet load_formula_list(const std::string& path) {
    return parse_formula_list(read_file(path), path);
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw Error("error writing '" + path + "'");
}

} // namespace deflog
