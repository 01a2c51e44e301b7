#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deflog {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violation on an otherwise well-formed input. `kind` is a
// stable machine-readable tag ("not-normal", "no-ssdr", ...).
class PreconditionError : public Error {
public:
    PreconditionError(std::string kind, const std::string& what)
        : Error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Propositional atom. Names match [A-Za-z_][A-Za-z0-9_]*; the `_j_` prefix
// is set aside for atoms minted by the CWA translation.
class Atom {
public:
    explicit Atom(std::string name) : name_(std::move(name)) {
        if (!valid_name(name_))
            throw Error("invalid atom name: '" + name_ + "'");
    }

    static bool valid_name(std::string_view s) {
        auto head = [](char c) {
            return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
        };
        auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
        if (s.empty() || !head(s[0]))
            return false;
        for (char c : s.substr(1))
            if (!tail(c))
                return false;
        return true;
    }

    const std::string& name() const { return name_; }

    friend bool operator==(const Atom& a, const Atom& b) { return a.name_ == b.name_; }
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
        return a.name_ <=> b.name_;
    }

private:
    std::string name_;
};

enum class Conn : std::uint8_t { Top, Bottom, Var, Not, And, Or, Implies, Iff };

// Immutable propositional formula with shared subtrees. Values are cheap to
// copy; all operations are pure.
class Formula {
    struct Node {
        Conn kind;
        std::string name;                  // Var only
        std::shared_ptr<const Node> lhs;   // Not uses lhs only
        std::shared_ptr<const Node> rhs;
    };

public:
    static Formula top() {
        static const Formula f{std::make_shared<Node>(Node{Conn::Top, {}, nullptr, nullptr})};
        return f;
    }
    static Formula bottom() {
        static const Formula f{std::make_shared<Node>(Node{Conn::Bottom, {}, nullptr, nullptr})};
        return f;
    }
    static Formula var(const Atom& a) {
        return Formula{std::make_shared<Node>(Node{Conn::Var, a.name(), nullptr, nullptr})};
    }
    static Formula var(const std::string& name) { return var(Atom(name)); }

    static Formula make_not(const Formula& f) {
        return Formula{std::make_shared<Node>(Node{Conn::Not, {}, f.node_, nullptr})};
    }
    static Formula make(Conn k, const Formula& l, const Formula& r) {
        return Formula{std::make_shared<Node>(Node{k, {}, l.node_, r.node_})};
    }

    Conn kind() const { return node_->kind; }
    bool is(Conn k) const { return node_->kind == k; }

    const std::string& atom_name() const { return node_->name; }
    Atom atom() const { return Atom(node_->name); }

    Formula lhs() const { return Formula{node_->lhs}; }
    Formula rhs() const { return Formula{node_->rhs}; }

    friend bool operator==(const Formula& a, const Formula& b) {
        return equal(a.node_.get(), b.node_.get());
    }

    friend Formula operator!(const Formula& f) { return make_not(f); }
    friend Formula operator&&(const Formula& a, const Formula& b) {
        return make(Conn::And, a, b);
    }
    friend Formula operator||(const Formula& a, const Formula& b) {
        return make(Conn::Or, a, b);
    }

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static bool equal(const Node* a, const Node* b) {
        if (a == b)
            return true;
        if (a->kind != b->kind)
            return false;
        switch (a->kind) {
        case Conn::Top:
        case Conn::Bottom:
            return true;
        case Conn::Var:
            return a->name == b->name;
        case Conn::Not:
            return equal(a->lhs.get(), b->lhs.get());
        default:
            return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
        }
    }

    std::shared_ptr<const Node> node_;
};

inline Formula implies(const Formula& a, const Formula& b) {
    return Formula::make(Conn::Implies, a, b);
}
inline Formula iff(const Formula& a, const Formula& b) {
    return Formula::make(Conn::Iff, a, b);
}

inline void collect_atoms(const Formula& f, std::set<Atom>& out) {
    switch (f.kind()) {
    case Conn::Top:
    case Conn::Bottom:
        return;
    case Conn::Var:
        out.insert(f.atom());
        return;
    case Conn::Not:
        collect_atoms(f.lhs(), out);
        return;
    default:
        collect_atoms(f.lhs(), out);
        collect_atoms(f.rhs(), out);
    }
}

inline std::set<Atom> atoms_of(const Formula& f) {
    std::set<Atom> out;
    collect_atoms(f, out);
    return out;
}

// Replaces every occurrence of atom `a` by `repl`.
inline Formula substitute(const Formula& f, const Atom& a, const Formula& repl) {
    switch (f.kind()) {
    case Conn::Top:
    case Conn::Bottom:
        return f;
    case Conn::Var:
        return f.atom_name() == a.name() ? repl : f;
    case Conn::Not:
        return Formula::make_not(substitute(f.lhs(), a, repl));
    default:
        return Formula::make(f.kind(), substitute(f.lhs(), a, repl),
                             substitute(f.rhs(), a, repl));
    }
}

// Folds truth constants bottom-up: !true -> false, p & true -> p, and so on.
// Keeps formulas produced by substitution readable.
inline Formula simplify_constants(const Formula& f) {
    switch (f.kind()) {
    case Conn::Top:
    case Conn::Bottom:
    case Conn::Var:
        return f;
    case Conn::Not: {
        Formula s = simplify_constants(f.lhs());
        if (s.is(Conn::Top))
            return Formula::bottom();
        if (s.is(Conn::Bottom))
            return Formula::top();
        return Formula::make_not(s);
    }
    default: {
        Formula l = simplify_constants(f.lhs());
        Formula r = simplify_constants(f.rhs());
        switch (f.kind()) {
        case Conn::And:
            if (l.is(Conn::Bottom) || r.is(Conn::Bottom))
                return Formula::bottom();
            if (l.is(Conn::Top))
                return r;
            if (r.is(Conn::Top))
                return l;
            break;
        case Conn::Or:
            if (l.is(Conn::Top) || r.is(Conn::Top))
                return Formula::top();
            if (l.is(Conn::Bottom))
                return r;
            if (r.is(Conn::Bottom))
                return l;
            break;
        case Conn::Implies:
            if (l.is(Conn::Bottom) || r.is(Conn::Top))
                return Formula::top();
            if (l.is(Conn::Top))
                return r;
            if (r.is(Conn::Bottom))
                return Formula::make_not(l);
            break;
        case Conn::Iff:
            if (l.is(Conn::Top))
                return r;
            if (r.is(Conn::Top))
                return l;
            if (l.is(Conn::Bottom))
                return Formula::make_not(r);
            if (r.is(Conn::Bottom))
                return Formula::make_not(l);
            break;
        default:
            break;
        }
        return Formula::make(f.kind(), l, r);
    }
    }
}

namespace detail {

// Precedence, high to low: ! (5) > & (4) > | (3) > -> (2) > <-> (1).
inline int precedence(Conn k) {
    switch (k) {
    case Conn::Iff:
        return 1;
    case Conn::Implies:
        return 2;
    case Conn::Or:
        return 3;
    case Conn::And:
        return 4;
    case Conn::Not:
        return 5;
    default:
        return 6;
    }
}

inline void print_formula(const Formula& f, int min_prec, std::string& out) {
    const int prec = precedence(f.kind());
    const bool paren = prec < min_prec;
    if (paren)
        out += '(';
    switch (f.kind()) {
    case Conn::Top:
        out += "true";
        break;
    case Conn::Bottom:
        out += "false";
        break;
    case Conn::Var:
        out += f.atom_name();
        break;
    case Conn::Not:
        out += '!';
        print_formula(f.lhs(), 5, out);
        break;
    case Conn::And:
        print_formula(f.lhs(), 4, out);
        out += " & ";
        print_formula(f.rhs(), 5, out);
        break;
    case Conn::Or:
        print_formula(f.lhs(), 3, out);
        out += " | ";
        print_formula(f.rhs(), 4, out);
        break;
    case Conn::Implies:
        // right-associative
        print_formula(f.lhs(), 3, out);
        out += " -> ";
        print_formula(f.rhs(), 2, out);
        break;
    case Conn::Iff:
        // left-associative
        print_formula(f.lhs(), 1, out);
        out += " <-> ";
        print_formula(f.rhs(), 2, out);
        break;
    }
    if (paren)
        out += ')';
}

} // namespace detail

// Canonical printer: parentheses appear exactly where precedence requires
// them, so parse_formula(to_string(f)) == f structurally.
inline std::string to_string(const Formula& f) {
    std::string out;
    detail::print_formula(f, 0, out);
    return out;
}

// Finite ordered formula list; structural duplicates collapse on insertion,
// iteration follows first-insertion order.
class FormulaSet {
public:
    FormulaSet() = default;
    FormulaSet(std::initializer_list<Formula> fs) {
        for (const Formula& f : fs)
            insert(f);
    }
    explicit FormulaSet(const std::vector<Formula>& fs) {
        for (const Formula& f : fs)
            insert(f);
    }

    void insert(const Formula& f) {
        if (!contains(f))
            items_.push_back(f);
    }
    void insert_all(const FormulaSet& other) {
        for (const Formula& f : other.items_)
            insert(f);
    }

    bool contains(const Formula& f) const {
        for (const Formula& g : items_)
            if (g == f)
                return true;
        return false;
    }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const Formula& operator[](std::size_t i) const { return items_[i]; }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    friend bool operator==(const FormulaSet& a, const FormulaSet& b) {
        if (a.items_.size() != b.items_.size())
            return false;
        for (std::size_t i = 0; i < a.items_.size(); ++i)
            if (!(a.items_[i] == b.items_[i]))
                return false;
        return true;
    }

private:
    std::vector<Formula> items_;
};

inline FormulaSet set_union(const FormulaSet& a, const FormulaSet& b) {
    FormulaSet out = a;
    out.insert_all(b);
    return out;
}

inline std::set<Atom> atoms_of(const FormulaSet& fs) {
    std::set<Atom> out;
    for (const Formula& f : fs)
        collect_atoms(f, out);
    return out;
}

// Left-folded conjunction; `true` for the empty set, the member itself for a
// singleton.
inline Formula conjunction(const FormulaSet& fs) {
    if (fs.empty())
        return Formula::top();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = acc && fs[i];
    return acc;
}

inline Formula conjunction(const std::vector<Formula>& fs) {
    if (fs.empty())
        return Formula::top();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = acc && fs[i];
    return acc;
}

inline Formula disjunction(const std::vector<Formula>& fs) {
    if (fs.empty())
        return Formula::bottom();
    Formula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = acc || fs[i];
    return acc;
}

} // namespace deflog
