#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "formula.hpp"

namespace deflog {

// Raised on malformed formula text; `offset` is the byte position of the
// offending character within the input.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

// Recursive descent over the connective grammar. Binding strength, loose to
// tight: <-> (left), -> (right), |, &, !. `true` and `false` are keywords.
class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = iff_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return f;
    }

private:
    Formula iff_expr() {
        Formula f = impl_expr();
        while (eat("<->"))
            f = iff(f, impl_expr());
        return f;
    }

    Formula impl_expr() {
        Formula f = or_expr();
        if (eat("->"))
            return implies(f, impl_expr());
        return f;
    }

    Formula or_expr() {
        Formula f = and_expr();
        while (eat("|"))
            f = f || and_expr();
        return f;
    }

    Formula and_expr() {
        Formula f = not_expr();
        while (eat("&"))
            f = f && not_expr();
        return f;
    }

    Formula not_expr() {
        if (eat("!"))
            return !not_expr();
        return primary();
    }

    Formula primary() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Formula f = iff_expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                fail("expected ')'");
            ++pos_;
            return f;
        }
        if (c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) {
            std::size_t start = pos_;
            while (pos_ < text_.size()) {
                char t = text_[pos_];
                if (t == '_' || (t >= 'A' && t <= 'Z') || (t >= 'a' && t <= 'z') ||
                    (t >= '0' && t <= '9'))
                    ++pos_;
                else
                    break;
            }
            std::string word(text_.substr(start, pos_ - start));
            if (word == "true")
                return Formula::top();
            if (word == "false")
                return Formula::bottom();
            return Formula::var(word);
        }
        fail("expected formula");
    }

    // Matches `tok` at the current position (after whitespace), taking care
    // that '|' is not the prefix of a longer operator but '<' and '-' are.
    bool eat(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_).substr(0, tok.size()) != tok)
            return false;
        // Refuse to split "<->" into "<" + "->": only "-" begins "->", and a
        // lone "-" is never requested, so a prefix check suffices for "->".
        if (tok == "->" && pos_ > 0 && text_[pos_ - 1] == '<')
            return false;
        pos_ += tok.size();
        return true;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(std::string_view text) {
    return detail::FormulaParser(text).parse();
}

} // namespace deflog
