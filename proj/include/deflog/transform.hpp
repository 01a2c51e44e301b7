#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "defaults.hpp"
#include "formula.hpp"
#include "sat.hpp"
#include "theory.hpp"

namespace deflog {

// A subset of a theory's defaults together with an order in which each
// member's prerequisite becomes provable from W plus the consequents of the
// members admitted before it.
struct RealizableSubset {
    std::vector<Default> defaults;    // in input order
    std::vector<std::size_t> order;   // admitted sequence, indexing `defaults`
};

// All subsets of dt.defaults that admit such an order, in subset-mask order
// (empty set first, bit i selecting defaults[i]). A subset is decided by
// greedy saturation: keep admitting any admissible member; since consequents
// only accumulate, an admissible member never becomes inadmissible, so the
// greedy order exists iff any order does.
inline std::vector<RealizableSubset> realizable_subsets(const DefaultTheory& dt) {
    const std::size_t n = dt.defaults.size();
    if (n > 30)
        throw Error("default set too large to enumerate (" + std::to_string(n) + " defaults)");
    std::vector<RealizableSubset> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        RealizableSubset sub;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1)
                sub.defaults.push_back(dt.defaults[i]);

        FormulaSet have = dt.world;
        std::vector<bool> admitted(sub.defaults.size(), false);
        bool progress = true;
        while (progress && sub.order.size() < sub.defaults.size()) {
            progress = false;
            for (std::size_t i = 0; i < sub.defaults.size(); ++i) {
                if (admitted[i])
                    continue;
                if (entails(have, sub.defaults[i].prereq())) {
                    admitted[i] = true;
                    have.insert(sub.defaults[i].consequent());
                    sub.order.push_back(i);
                    progress = true;
                    break;
                }
            }
        }
        if (sub.order.size() == sub.defaults.size())
            out.push_back(std::move(sub));
    }
    return out;
}

// A justification that is itself contradictory blocks its default against
// every theory (the negation is a tautology), so such defaults are inert.
inline bool has_contradictory_justification(const Default& d) {
    for (const Formula& g : d.justifications())
        if (!satisfiable(g))
            return true;
    return false;
}

// Prerequisite-free conversion: one default per nonempty realizable subset
// D', with justification set the union over D' and consequent the
// conjunction of D's consequents in input order. The result has the same
// extensions as the input. Inert defaults (contradictory justification) are
// dropped up front; the empty subset's tautological default is omitted.
inline DefaultTheory prereq_free(const DefaultTheory& dt) {
    DefaultTheory pruned{{}, dt.world};
    for (const Default& d : dt.defaults)
        if (!has_contradictory_justification(d))
            pruned.defaults.push_back(d);

    std::vector<Default> out;
    for (const RealizableSubset& sub : realizable_subsets(pruned)) {
        if (sub.defaults.empty())
            continue;
        FormulaSet justs;
        std::vector<Formula> cons;
        for (const Default& d : sub.defaults) {
            justs.insert_all(d.justifications());
            cons.push_back(d.consequent());
        }
        Default emitted = Default::justified(justs, conjunction(cons));
        bool seen = false;
        for (const Default& e : out)
            if (e == emitted) {
                seen = true;
                break;
            }
        if (!seen)
            out.push_back(std::move(emitted));
    }
    return {out, dt.world};
}

// Rewrites each prerequisite-free default :Gamma//\Gamma as the normal
// default :/\Gamma//\Gamma. Requires every input default to have that shape
// (tautological prerequisite, consequent equivalent to the justification
// conjunction) — the shape prereq_free produces from normal inputs.
inline DefaultTheory normalize_hat(const DefaultTheory& dt) {
    std::vector<Default> out;
    for (std::size_t i = 0; i < dt.defaults.size(); ++i) {
        const Default& d = dt.defaults[i];
        if (!is_prereq_free(d))
            throw PreconditionError("bad-shape", "default #" + std::to_string(i + 1) +
                                                     " has a non-tautological prerequisite");
        Formula g = conjunction(d.justifications());
        if (!equivalent_formulas(d.consequent(), g))
            throw PreconditionError(
                "bad-shape", "default #" + std::to_string(i + 1) +
                                 " has a consequent not equivalent to the conjunction "
                                 "of its justifications");
        out.push_back(Default::normal(g));
    }
    return {out, dt.world};
}

// Adds the extension-eliminating default f:/false. Consistent extensions of
// the result are exactly the consistent extensions of dt not containing f.
inline DefaultTheory eliminate_formula(const DefaultTheory& dt, const Formula& f) {
    DefaultTheory out = dt;
    out.defaults.push_back(Default(f, FormulaSet{}, Formula::bottom()));
    return out;
}

// Strong system of distinct representatives: per member, a formula of that
// member belonging to no other member. Candidates searched are the member's
// individual generators plus the single conjunction of all its generators;
// absence within this space does not prove no SSDR exists at all.
inline std::optional<std::map<std::size_t, Formula>> find_ssdr(const TheoryFamily& fam) {
    std::map<std::size_t, Formula> out;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        FormulaSet candidates = fam[i].generators();
        candidates.insert(fam[i].generator_conjunction());
        bool found = false;
        for (const Formula& phi : candidates) {
            if (!fam[i].contains(phi))
                continue;
            bool elsewhere = false;
            for (std::size_t j = 0; j < fam.size(); ++j)
                if (j != i && fam[j].contains(phi)) {
                    elsewhere = true;
                    break;
                }
            if (!elsewhere) {
                out.emplace(i, phi);
                found = true;
                break;
            }
        }
        if (!found)
            return std::nullopt;
    }
    return out;
}

// Given dt whose extensions are exactly fam, returns a theory whose
// extensions are the kept members only, by adding one eliminating default
// per discarded member's representative.
inline DefaultTheory represent_subfamily(const DefaultTheory& dt, const TheoryFamily& fam,
                                         const std::set<std::size_t>& keep) {
    for (std::size_t i : keep)
        if (i >= fam.size())
            throw Error("keep index " + std::to_string(i) + " out of range for family of " +
                        std::to_string(fam.size()));

    ExtensionSet ext = enumerate_extensions(dt);
    std::vector<FinTheory> fam_members(fam.begin(), fam.end());
    if (!(ext == ExtensionSet::from_members(fam_members)))
        throw PreconditionError("not-representing",
                                "the theory's extensions do not match the given family");

    for (std::size_t i = 0; i < fam.size(); ++i)
        if (fam[i].inconsistent() && !keep.count(i))
            throw PreconditionError("inconsistent-member",
                                    "the inconsistent extension cannot be eliminated");

    auto ssdr = find_ssdr(fam);
    if (!ssdr)
        throw PreconditionError("no-ssdr",
                                "no system of distinct representatives found for the family");

    DefaultTheory out = dt;
    for (std::size_t i = 0; i < fam.size(); ++i)
        if (!keep.count(i))
            out.defaults.push_back(Default(ssdr->at(i), FormulaSet{}, Formula::bottom()));
    return out;
}

// Converts a normal default theory with satisfiable world into an equivalent
// prerequisite-free normal theory with empty world. After prerequisite
// removal and hat normalization, defaults whose justification contradicts
// omega = /\W can never fire and are dropped; if none remain the single
// default :omega/omega reproduces the sole extension Cn(W), otherwise each
// survivor :beta/beta becomes :beta&omega/beta&omega.
inline DefaultTheory to_empty_w(const DefaultTheory& dt) {
    for (std::size_t i = 0; i < dt.defaults.size(); ++i)
        if (!is_normal(dt.defaults[i]))
            throw PreconditionError("not-normal",
                                    "default #" + std::to_string(i + 1) + " is not normal");
    if (!satisfiable(dt.world))
        throw PreconditionError("unsat-world", "the world is unsatisfiable");

    DefaultTheory flat = normalize_hat(prereq_free(dt));
    Formula omega = conjunction(dt.world);

    std::vector<Default> out;
    for (const Default& d : flat.defaults) {
        if (!satisfiable(FormulaSet{d.consequent(), omega}))
            continue;
        Default mapped = Default::normal(d.consequent() && omega);
        bool seen = false;
        for (const Default& e : out)
            if (e == mapped) {
                seen = true;
                break;
            }
        if (!seen)
            out.push_back(std::move(mapped));
    }
    if (out.empty())
        return {{Default::normal(omega)}, FormulaSet{}};
    return {out, FormulaSet{}};
}

} // namespace deflog
