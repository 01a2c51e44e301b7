#pragma once

#include <set>
#include <utility>
#include <vector>

#include "formula.hpp"
#include "sat.hpp"

namespace deflog {

// Finitely generated deductively closed theory Cn(generators). When the
// generators are unsatisfiable the value denotes the whole language.
class FinTheory {
public:
    FinTheory() = default;
    explicit FinTheory(FormulaSet gens)
        : gens_(std::move(gens)), inconsistent_(!satisfiable(gens_)) {}

    static FinTheory whole_language() {
        return FinTheory(FormulaSet{Formula::bottom()});
    }

    const FormulaSet& generators() const { return gens_; }
    bool inconsistent() const { return inconsistent_; }

    bool contains(const Formula& f) const { return entails(gens_, f); }
    bool contains_all(const FormulaSet& fs) const { return entails_all(gens_, fs); }

    Formula generator_conjunction() const { return conjunction(gens_); }

private:
    FormulaSet gens_;
    bool inconsistent_ = false;
};

inline bool theory_equal(const FinTheory& a, const FinTheory& b) {
    return entails_all(a.generators(), b.generators()) &&
           entails_all(b.generators(), a.generators());
}

// Cn(a) subset-or-equal Cn(b).
inline bool theory_included(const FinTheory& a, const FinTheory& b) {
    return entails_all(b.generators(), a.generators());
}

// Eliminates atom `a`: the returned formula generates exactly the part of
// Cn(fs) expressible without `a`, via (/\fs)[a:=true] | (/\fs)[a:=false].
inline Formula forget(const FormulaSet& fs, const Atom& a) {
    Formula whole = conjunction(fs);
    Formula pos = substitute(whole, a, Formula::top());
    Formula neg = substitute(whole, a, Formula::bottom());
    return simplify_constants(pos || neg);
}

// Projects a theory onto the sublanguage over `keep` by forgetting every
// other atom of its generators, one at a time.
inline FinTheory project(const FinTheory& t, const std::set<Atom>& keep) {
    Formula f = t.generator_conjunction();
    for (const Atom& a : atoms_of(f))
        if (!keep.count(a))
            f = forget(FormulaSet{f}, a);
    return FinTheory(FormulaSet{f});
}

// Finite list of pairwise non-equal theories.
class TheoryFamily {
public:
    TheoryFamily() = default;
    explicit TheoryFamily(std::vector<FinTheory> members) : members_(std::move(members)) {
        for (std::size_t i = 0; i < members_.size(); ++i)
            for (std::size_t j = i + 1; j < members_.size(); ++j)
                if (theory_equal(members_[i], members_[j]))
                    throw Error("duplicate theories in family (members " +
                                std::to_string(i) + " and " + std::to_string(j) + ")");
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const FinTheory& operator[](std::size_t i) const { return members_[i]; }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool contains_theory(const FinTheory& t) const {
        for (const FinTheory& m : members_)
            if (theory_equal(m, t))
                return true;
        return false;
    }

private:
    std::vector<FinTheory> members_;
};

} // namespace deflog
