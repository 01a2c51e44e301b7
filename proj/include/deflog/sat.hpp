#pragma once

#include <cstdlib>
#include <map>
#include <vector>

#include "formula.hpp"

namespace deflog {
namespace detail {

// Tseitin transformation: every subformula gets a literal, with clauses
// forcing the literal to track the subformula's truth value. Variable 1 is a
// constant pinned true so Top/Bottom need no special cases downstream.
class CnfBuilder {
public:
    CnfBuilder() { clauses_.push_back({kTrueVar}); }

    void add_asserted(const Formula& f) { clauses_.push_back({encode(f)}); }

    int var_count() const { return next_var_ - 1; }
    std::vector<std::vector<int>> take_clauses() { return std::move(clauses_); }

    int var_for(const std::string& name) {
        auto it = vars_.find(name);
        if (it != vars_.end())
            return it->second;
        int v = next_var_++;
        vars_.emplace(name, v);
        return v;
    }

private:
    int encode(const Formula& f) {
        switch (f.kind()) {
        case Conn::Top:
            return kTrueVar;
        case Conn::Bottom:
            return -kTrueVar;
        case Conn::Var:
            return var_for(f.atom_name());
        case Conn::Not:
            return -encode(f.lhs());
        default:
            break;
        }
        int a = encode(f.lhs());
        int b = encode(f.rhs());
        int x = next_var_++;
        switch (f.kind()) {
        case Conn::And:
            clauses_.push_back({-x, a});
            clauses_.push_back({-x, b});
            clauses_.push_back({x, -a, -b});
            break;
        case Conn::Or:
            clauses_.push_back({-x, a, b});
            clauses_.push_back({x, -a});
            clauses_.push_back({x, -b});
            break;
        case Conn::Implies:
            clauses_.push_back({-x, -a, b});
            clauses_.push_back({x, a});
            clauses_.push_back({x, -b});
            break;
        default: // Iff
            clauses_.push_back({-x, -a, b});
            clauses_.push_back({-x, a, -b});
            clauses_.push_back({x, a, b});
            clauses_.push_back({x, -a, -b});
            break;
        }
        return x;
    }

    static constexpr int kTrueVar = 1;
    std::map<std::string, int> vars_;
    int next_var_ = 2;
    std::vector<std::vector<int>> clauses_;
};

// Recursive DPLL with unit propagation and a trail for backtracking.
class Dpll {
public:
    Dpll(int var_count, std::vector<std::vector<int>> clauses)
        : clauses_(std::move(clauses)), value_(static_cast<std::size_t>(var_count) + 1, 0) {}

    bool satisfiable() { return search(); }

private:
    bool search() {
        std::size_t mark = trail_.size();
        if (!propagate()) {
            unwind(mark);
            return false;
        }
        int v = pick_unassigned();
        if (v == 0)
            return true;
        for (int sign : {1, -1}) {
            std::size_t mark2 = trail_.size();
            set_value(v, sign);
            if (search())
                return true;
            unwind(mark2);
        }
        unwind(mark);
        return false;
    }

    // Repeatedly asserts the sole unassigned literal of each one-short
    // clause; reports false on an all-false clause.
    bool propagate() {
        bool again = true;
        while (again) {
            again = false;
            for (const auto& clause : clauses_) {
                int unassigned = 0;
                int last = 0;
                bool sat = false;
                for (int lit : clause) {
                    int8_t v = value_[std::size_t(std::abs(lit))];
                    if (v == 0) {
                        ++unassigned;
                        last = lit;
                    } else if ((v > 0) == (lit > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat)
                    continue;
                if (unassigned == 0)
                    return false;
                if (unassigned == 1) {
                    set_value(std::abs(last), last > 0 ? 1 : -1);
                    again = true;
                }
            }
        }
        return true;
    }

    int pick_unassigned() const {
        for (std::size_t v = 1; v < value_.size(); ++v)
            if (value_[v] == 0)
                return static_cast<int>(v);
        return 0;
    }

    void set_value(int var, int sign) {
        value_[std::size_t(var)] = static_cast<int8_t>(sign);
        trail_.push_back(var);
    }

    void unwind(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[std::size_t(trail_.back())] = 0;
            trail_.pop_back();
        }
    }

    std::vector<std::vector<int>> clauses_;
    std::vector<int8_t> value_;
    std::vector<int> trail_;
};

} // namespace detail

inline bool satisfiable(const FormulaSet& fs) {
    detail::CnfBuilder builder;
    for (const Formula& f : fs)
        builder.add_asserted(f);
    detail::Dpll solver(builder.var_count(), builder.take_clauses());
    return solver.satisfiable();
}

inline bool satisfiable(const Formula& f) { return satisfiable(FormulaSet{f}); }

// Classical entailment: premises |= goal iff premises + !goal is unsatisfiable.
inline bool entails(const FormulaSet& premises, const Formula& goal) {
    detail::CnfBuilder builder;
    for (const Formula& f : premises)
        builder.add_asserted(f);
    builder.add_asserted(!goal);
    detail::Dpll solver(builder.var_count(), builder.take_clauses());
    return !solver.satisfiable();
}

inline bool entails_all(const FormulaSet& premises, const FormulaSet& goals) {
    for (const Formula& g : goals)
        if (!entails(premises, g))
            return false;
    return true;
}

inline bool is_tautology(const Formula& f) { return !satisfiable(!f); }

inline bool equivalent_formulas(const Formula& a, const Formula& b) {
    return is_tautology(iff(a, b));
}

} // namespace deflog
