#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "formula.hpp"
#include "sat.hpp"
#include "theory.hpp"

namespace deflog {

// Default rule prereq : justifications / consequent.
class Default {
public:
    Default(Formula prereq, FormulaSet justifications, Formula consequent)
        : prereq_(std::move(prereq)),
          justifications_(std::move(justifications)),
          consequent_(std::move(consequent)) {}

    static Default justified(FormulaSet justifications, Formula consequent) {
        return Default(Formula::top(), std::move(justifications), std::move(consequent));
    }
    static Default normal(const Formula& f) { return Default(Formula::top(), {f}, f); }

    const Formula& prereq() const { return prereq_; }
    const FormulaSet& justifications() const { return justifications_; }
    const Formula& consequent() const { return consequent_; }

    friend bool operator==(const Default& a, const Default& b) {
        return a.prereq_ == b.prereq_ && a.justifications_ == b.justifications_ &&
               a.consequent_ == b.consequent_;
    }

private:
    Formula prereq_;
    FormulaSet justifications_;
    Formula consequent_;
};

// Prerequisite-free means the prerequisite is a tautology, not merely the
// literal constant `true`.
inline bool is_prereq_free(const Default& d) { return is_tautology(d.prereq()); }

// Normal shape alpha:beta/beta, read structurally.
inline bool is_normal(const Default& d) {
    return d.justifications().size() == 1 && d.justifications()[0] == d.consequent();
}

struct DefaultTheory {
    std::vector<Default> defaults;
    FormulaSet world;
};

inline bool is_normal(const DefaultTheory& dt) {
    for (const Default& d : dt.defaults)
        if (!is_normal(d))
            return false;
    return true;
}

inline std::set<Atom> atoms_of(const DefaultTheory& dt) {
    std::set<Atom> out = atoms_of(dt.world);
    for (const Default& d : dt.defaults) {
        collect_atoms(d.prereq(), out);
        for (const Formula& g : d.justifications())
            collect_atoms(g, out);
        collect_atoms(d.consequent(), out);
    }
    return out;
}

struct MonotoneRule {
    Formula premise;
    Formula conclusion;
};

// d is s-applicable: no justification's negation follows from s. Vacuously
// true for an empty justification set; always false against the inconsistent
// theory when the set is nonempty.
inline bool is_applicable(const Default& d, const FinTheory& s) {
    for (const Formula& g : d.justifications())
        if (entails(s.generators(), !g))
            return false;
    return true;
}

// The reduct: monotone images premise/conclusion of the s-applicable
// defaults, in input order.
inline std::vector<MonotoneRule> reduct(const DefaultTheory& dt, const FinTheory& s) {
    std::vector<MonotoneRule> out;
    for (const Default& d : dt.defaults)
        if (is_applicable(d, s))
            out.push_back({d.prereq(), d.consequent()});
    return out;
}

// Least theory containing w and closed under the rules, by saturation: fire
// any rule whose premise is entailed, until a full pass adds nothing.
inline FinTheory monotone_closure(const FormulaSet& w, const std::vector<MonotoneRule>& rules) {
    FormulaSet gens = w;
    std::vector<bool> fired(rules.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            if (fired[i])
                continue;
            if (entails(gens, rules[i].premise)) {
                gens.insert(rules[i].conclusion);
                fired[i] = true;
                changed = true;
            }
        }
    }
    return FinTheory(gens);
}

// Fixpoint test: s is an extension iff s equals the closure of w under the
// reduct taken with respect to s itself.
inline bool is_extension(const DefaultTheory& dt, const FinTheory& s) {
    return theory_equal(monotone_closure(dt.world, reduct(dt, s)), s);
}

// Defaults that are s-applicable and whose prerequisite lies in s.
inline std::vector<Default> generating_defaults(const DefaultTheory& dt, const FinTheory& s) {
    std::vector<Default> out;
    for (const Default& d : dt.defaults)
        if (is_applicable(d, s) && entails(s.generators(), d.prereq()))
            out.push_back(d);
    return out;
}

namespace detail {

// Truth table of a formula over an ordered atom list, one bit per valuation.
// Bit v of the table is the value under the valuation where atom j is true
// iff bit j of v is set.
using ModelTable = std::vector<std::uint64_t>;

inline std::size_t table_words(std::size_t atom_count) {
    std::size_t bits = std::size_t(1) << atom_count;
    return (bits + 63) / 64;
}

inline ModelTable table_full(std::size_t atom_count) {
    ModelTable t(table_words(atom_count), ~std::uint64_t(0));
    std::size_t bits = std::size_t(1) << atom_count;
    if (bits % 64 != 0)
        t.back() = (std::uint64_t(1) << (bits % 64)) - 1;
    return t;
}

inline ModelTable table_var(std::size_t j, std::size_t atom_count) {
    static constexpr std::uint64_t kPattern[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    ModelTable t(table_words(atom_count), 0);
    for (std::size_t w = 0; w < t.size(); ++w) {
        if (j < 6)
            t[w] = kPattern[j];
        else if ((w >> (j - 6)) & 1)
            t[w] = ~std::uint64_t(0);
    }
    std::size_t bits = std::size_t(1) << atom_count;
    if (bits % 64 != 0)
        t.back() &= (std::uint64_t(1) << (bits % 64)) - 1;
    return t;
}

inline ModelTable model_table(const Formula& f, const std::map<std::string, std::size_t>& index,
                              std::size_t atom_count) {
    switch (f.kind()) {
    case Conn::Top:
        return table_full(atom_count);
    case Conn::Bottom:
        return ModelTable(table_words(atom_count), 0);
    case Conn::Var:
        return table_var(index.at(f.atom_name()), atom_count);
    case Conn::Not: {
        ModelTable a = model_table(f.lhs(), index, atom_count);
        ModelTable full = table_full(atom_count);
        for (std::size_t w = 0; w < a.size(); ++w)
            a[w] = ~a[w] & full[w];
        return a;
    }
    default: {
        ModelTable a = model_table(f.lhs(), index, atom_count);
        ModelTable b = model_table(f.rhs(), index, atom_count);
        ModelTable full = table_full(atom_count);
        for (std::size_t w = 0; w < a.size(); ++w) {
            switch (f.kind()) {
            case Conn::And:
                a[w] &= b[w];
                break;
            case Conn::Or:
                a[w] |= b[w];
                break;
            case Conn::Implies:
                a[w] = (~a[w] | b[w]) & full[w];
                break;
            default: // Iff
                a[w] = ~(a[w] ^ b[w]) & full[w];
                break;
            }
        }
        return a;
    }
    }
}

} // namespace detail

// Sorted antichain of extensions. Building from raw members deduplicates
// under theory_equal (keeping the representative whose printed generator
// conjunction is smallest), maps the inconsistent theory to generators
// {false}, and sorts by the printed generator conjunction.
class ExtensionSet {
public:
    ExtensionSet() = default;

    static ExtensionSet from_members(const std::vector<FinTheory>& raw) {
        std::vector<FinTheory> kept;
        std::vector<std::string> keys;
        for (const FinTheory& t : raw) {
            FinTheory m = t.inconsistent() ? FinTheory::whole_language() : t;
            std::string key = to_string(m.generator_conjunction());
            bool merged = false;
            for (std::size_t i = 0; i < kept.size(); ++i) {
                if (theory_equal(kept[i], m)) {
                    if (key < keys[i]) {
                        kept[i] = m;
                        keys[i] = key;
                    }
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                kept.push_back(m);
                keys.push_back(std::move(key));
            }
        }
        return sorted(std::move(kept), std::move(keys));
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

    friend bool operator==(const ExtensionSet& a, const ExtensionSet& b) {
        if (a.members_.size() != b.members_.size())
            return false;
        for (const FinTheory& m : a.members_)
            if (!b.contains_theory(m))
                return false;
        return true;
    }

private:
    static ExtensionSet sorted(std::vector<FinTheory> members, std::vector<std::string> keys) {
        std::vector<std::size_t> perm(members.size());
        std::iota(perm.begin(), perm.end(), std::size_t(0));
        std::sort(perm.begin(), perm.end(),
                  [&](std::size_t i, std::size_t j) { return keys[i] < keys[j]; });
        ExtensionSet out;
        out.members_.reserve(members.size());
        for (std::size_t i : perm)
            out.members_.push_back(std::move(members[i]));
        return out;
    }

    std::vector<FinTheory> members_;
};

namespace detail {

// Shared enumeration core. Every extension is Cn(W + some subset of the
// consequents), so all 2^|D| candidate generator sets are formed, merged
// into semantic classes, and the fixpoint test runs once per class. Classes
// are keyed by truth table when the atom universe is small enough and by
// pairwise theory comparison otherwise.
inline std::vector<FinTheory> enumerate_extension_members(const DefaultTheory& dt) {
    const std::size_t n = dt.defaults.size();
    if (n > 30)
        throw Error("default set too large to enumerate (" + std::to_string(n) + " defaults)");

    std::set<Atom> universe = atoms_of(dt.world);
    std::vector<Formula> cons;
    cons.reserve(n);
    for (const Default& d : dt.defaults) {
        cons.push_back(d.consequent());
        collect_atoms(d.consequent(), universe);
    }

    auto gens_for = [&](std::uint32_t mask) {
        FormulaSet gens = dt.world;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1)
                gens.insert(cons[i]);
        return gens;
    };

    std::vector<FinTheory> found;

    if (universe.size() <= 18) {
        std::map<std::string, std::size_t> index;
        for (const Atom& a : universe)
            index.emplace(a.name(), index.size());
        const std::size_t na = universe.size();

        ModelTable wtable = table_full(na);
        for (const Formula& f : dt.world) {
            ModelTable t = model_table(f, index, na);
            for (std::size_t w = 0; w < wtable.size(); ++w)
                wtable[w] &= t[w];
        }
        std::vector<ModelTable> ctable;
        ctable.reserve(n);
        for (const Formula& c : cons)
            ctable.push_back(model_table(c, index, na));

        // semantic class -> subset masks producing it
        std::map<ModelTable, std::vector<std::uint32_t>> classes;
        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
            ModelTable t = wtable;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1)
                    for (std::size_t w = 0; w < t.size(); ++w)
                        t[w] &= ctable[i][w];
            classes[std::move(t)].push_back(mask);
        }

        for (const auto& [table, masks] : classes) {
            FinTheory candidate(gens_for(masks.front()));
            if (!is_extension(dt, candidate))
                continue;
            if (candidate.inconsistent()) {
                found.push_back(FinTheory::whole_language());
                continue;
            }
            // pick the representative generator set with the smallest print
            std::size_t best = 0;
            std::string best_key = to_string(conjunction(gens_for(masks.front())));
            for (std::size_t k = 1; k < masks.size(); ++k) {
                std::string key = to_string(conjunction(gens_for(masks[k])));
                if (key < best_key) {
                    best_key = std::move(key);
                    best = k;
                }
            }
            found.push_back(FinTheory(gens_for(masks[best])));
        }
        return found;
    }

    // fallback: pairwise semantic grouping
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        FinTheory candidate(gens_for(mask));
        bool seen = false;
        for (const FinTheory& f : found)
            if (theory_equal(f, candidate)) {
                seen = true;
                break;
            }
        if (!seen && is_extension(dt, candidate))
            found.push_back(std::move(candidate));
    }
    return found;
}

} // namespace detail

// All extensions of dt, via the candidate space of W-plus-consequent-subset
// generator sets. The empty result is legal; the inconsistent world yields
// exactly the whole language.
inline ExtensionSet enumerate_extensions(const DefaultTheory& dt) {
    return ExtensionSet::from_members(detail::enumerate_extension_members(dt));
}

// Same extension sets.
inline bool equivalent(const DefaultTheory& a, const DefaultTheory& b) {
    return enumerate_extensions(a) == enumerate_extensions(b);
}

// dtPrime's extensions, projected onto baseAtoms, coincide with dt's.
inline bool semi_equivalent(const DefaultTheory& dt, const DefaultTheory& dtPrime,
                            const std::set<Atom>& baseAtoms) {
    ExtensionSet base = enumerate_extensions(dt);
    std::vector<FinTheory> projected;
    for (const FinTheory& t : enumerate_extensions(dtPrime))
        projected.push_back(project(t, baseAtoms));
    return base == ExtensionSet::from_members(projected);
}

} // namespace deflog
