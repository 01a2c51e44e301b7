#pragma once

#include <string>
#include <utility>
#include <vector>

#include "defaults.hpp"
#include "formula.hpp"
#include "sat.hpp"
#include "theory.hpp"

namespace deflog {

// Intersection of finitely generated theories: generated by the disjunction
// of the members' generator conjunctions.
inline FinTheory intersect_theories(const TheoryFamily& fam) {
    if (fam.empty())
        throw PreconditionError("empty-family", "cannot intersect an empty family");
    std::vector<Formula> parts;
    parts.reserve(fam.size());
    for (const FinTheory& m : fam)
        parts.push_back(m.generator_conjunction());
    return FinTheory(FormulaSet{disjunction(parts)});
}

struct FamilyDiagnosis {
    bool nonIncluding;
    FinTheory intersection;             // U
    std::vector<Formula> witnesses;     // member i = Cn(U + witnesses[i])
};

// Antichain check plus the data the representing construction needs: the
// intersection U and per-member witness formulas. Each member's generator
// conjunction witnesses it over U, since U is contained in every member.
inline FamilyDiagnosis diagnose_family(const TheoryFamily& fam) {
    FamilyDiagnosis out{true, intersect_theories(fam), {}};
    out.witnesses.reserve(fam.size());
    for (const FinTheory& m : fam)
        out.witnesses.push_back(m.generator_conjunction());
    for (std::size_t i = 0; i < fam.size() && out.nonIncluding; ++i)
        for (std::size_t j = 0; j < fam.size(); ++j)
            if (i != j && theory_included(fam[i], fam[j])) {
                out.nonIncluding = false;
                break;
            }
    return out;
}

// Builds a default theory whose extensions are exactly the given family of
// pairwise non-including theories: W generates the intersection, and each
// member's witness is concluded as long as every other witness is refutable.
// A singleton family needs no defaults at all.
inline DefaultTheory construct_representing(const TheoryFamily& fam) {
    if (fam.empty())
        throw PreconditionError("empty-family", "cannot represent an empty family");
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = 0; j < fam.size(); ++j)
            if (i != j && theory_included(fam[i], fam[j]))
                throw PreconditionError("including-pair",
                                        "member " + std::to_string(i) + " is included in member " +
                                            std::to_string(j));
    if (fam.size() == 1)
        return {{}, fam[0].generators()};

    FamilyDiagnosis diag = diagnose_family(fam);
    std::vector<Default> defaults;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        FormulaSet justs;
        for (std::size_t j = 0; j < fam.size(); ++j)
            if (j != i)
                justs.insert(!diag.witnesses[j]);
        defaults.push_back(Default::justified(std::move(justs), diag.witnesses[i]));
    }
    return {defaults, diag.intersection.generators()};
}

// All subset-maximal Phi of psi with w + Phi satisfiable, in ascending
// subset-mask order (bit i selects psi[i]).
inline std::vector<FormulaSet> maximal_consistent_subsets(const FormulaSet& w,
                                                          const FormulaSet& psi) {
    if (!satisfiable(w))
        throw PreconditionError("unsat-world", "the base set is unsatisfiable");
    if (psi.size() > 30)
        throw Error("formula set too large to enumerate (" + std::to_string(psi.size()) + ")");

    std::vector<std::uint32_t> consistent;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << psi.size()); ++mask) {
        FormulaSet fs = w;
        for (std::size_t i = 0; i < psi.size(); ++i)
            if ((mask >> i) & 1)
                fs.insert(psi[i]);
        if (satisfiable(fs))
            consistent.push_back(mask);
    }
    std::vector<FormulaSet> out;
    for (std::uint32_t m : consistent) {
        bool maximal = true;
        for (std::uint32_t m2 : consistent)
            if (m2 != m && (m2 & m) == m) {
                maximal = false;
                break;
            }
        if (maximal) {
            FormulaSet phi;
            for (std::size_t i = 0; i < psi.size(); ++i)
                if ((m >> i) & 1)
                    phi.insert(psi[i]);
            out.push_back(std::move(phi));
        }
    }
    return out;
}

// The normal prerequisite-free theory ({:phi/phi : phi in psi}, w). Its
// extensions are Cn(w + Phi) for the maximal consistent Phi, or the whole
// language when w is unsatisfiable.
inline DefaultTheory construct_normal_representing(const FormulaSet& w, const FormulaSet& psi) {
    std::vector<Default> defaults;
    defaults.reserve(psi.size());
    for (const Formula& f : psi)
        defaults.push_back(Default::normal(f));
    return {defaults, w};
}

// The completion defaults :q/q for every literal q over the given atoms,
// positive literal first per atom.
inline std::vector<Default> comp_defaults(const std::vector<Atom>& atoms) {
    if (atoms.empty())
        throw PreconditionError("empty-atoms", "at least one atom is required");
    std::vector<Default> out;
    out.reserve(2 * atoms.size());
    for (const Atom& a : atoms) {
        out.push_back(Default::normal(Formula::var(a)));
        out.push_back(Default::normal(!Formula::var(a)));
    }
    return out;
}

// Brute-force reference: theories Cn(w + complete sign assignment) over the
// given atoms, restricted to consistent assignments and filtered to the
// inclusion-minimal ones. Assignments are visited all-positive first, with
// earlier atoms more significant.
inline TheoryFamily minimal_p_complete(const FormulaSet& w, const std::vector<Atom>& atoms) {
    if (!satisfiable(w))
        throw PreconditionError("unsat-world", "the base set is unsatisfiable");
    if (atoms.size() > 20)
        throw Error("atom set too large to enumerate (" + std::to_string(atoms.size()) + ")");

    const std::size_t k = atoms.size();
    std::vector<FinTheory> candidates;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << k); ++mask) {
        FormulaSet gens = w;
        for (std::size_t i = 0; i < k; ++i) {
            Formula v = Formula::var(atoms[i]);
            gens.insert((mask >> (k - 1 - i)) & 1 ? !v : v);
        }
        if (satisfiable(gens))
            candidates.push_back(FinTheory(gens));
    }

    std::vector<FinTheory> kept;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < candidates.size() && minimal; ++j)
            if (j != i && theory_included(candidates[j], candidates[i]) &&
                !theory_equal(candidates[j], candidates[i]))
                minimal = false;
        if (!minimal)
            continue;
        bool dup = false;
        for (const FinTheory& t : kept)
            if (theory_equal(t, candidates[i])) {
                dup = true;
                break;
            }
        if (!dup)
            kept.push_back(candidates[i]);
    }
    return TheoryFamily(std::move(kept));
}

// One normal default :pi/pi per sign-prefix of the atom list consistent with
// w, breadth-first (shorter prefixes first, positive signs first, earlier
// atoms more significant). The returned theory has an empty world; w only
// selects which prefixes exist.
inline DefaultTheory tree_defaults(const FormulaSet& w, const std::vector<Atom>& atomOrder) {
    if (!satisfiable(w))
        throw PreconditionError("unsat-world", "the base set is unsatisfiable");
    if (atomOrder.size() > 16)
        throw Error("atom list too large to enumerate (" + std::to_string(atomOrder.size()) + ")");

    std::vector<Default> out;
    for (std::size_t len = 1; len <= atomOrder.size(); ++len) {
        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << len); ++mask) {
            std::vector<Formula> lits;
            FormulaSet check = w;
            for (std::size_t i = 0; i < len; ++i) {
                Formula v = Formula::var(atomOrder[i]);
                Formula lit = (mask >> (len - 1 - i)) & 1 ? !v : v;
                lits.push_back(lit);
                check.insert(lit);
            }
            if (satisfiable(check))
                out.push_back(Default::normal(conjunction(lits)));
        }
    }
    return {out, FormulaSet{}};
}

} // namespace deflog
