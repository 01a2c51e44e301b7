#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "defaults.hpp"
#include "formula.hpp"
#include "transform.hpp"

namespace deflog {

// Closed-world defaults :!p/!p, one per atom, in the given order.
inline std::vector<Default> cwa_defaults(const std::vector<Atom>& atoms) {
    std::vector<Default> out;
    out.reserve(atoms.size());
    for (const Atom& a : atoms)
        out.push_back(Default::normal(!Formula::var(a)));
    return out;
}

struct CwaTranslation {
    // distinct consequent psi -> its fresh atom, in discovery order
    std::vector<std::pair<Formula, Atom>> freshAtoms;
    FormulaSet bridge;          // {!p_psi <-> psi}
    DefaultTheory result;       // (cwa defaults over the fresh atoms, W + bridge)
    std::set<Atom> baseAtoms;   // atoms of the source theory
};

// Rewrites a normal default theory into closed-world form over fresh atoms:
// after prerequisite removal and hat normalization, each distinct consequent
// psi gets a fresh atom p_psi tied to it by the biconditional !p_psi <-> psi,
// and the defaults become :!p_psi/!p_psi. Extensions of the result project
// onto the source atoms to exactly the source extensions.
inline CwaTranslation cwa_translate(const DefaultTheory& dt) {
    for (std::size_t i = 0; i < dt.defaults.size(); ++i)
        if (!is_normal(dt.defaults[i]))
            throw PreconditionError("not-normal",
                                    "default #" + std::to_string(i + 1) + " is not normal");

    CwaTranslation tr;
    tr.baseAtoms = atoms_of(dt);

    DefaultTheory flat = normalize_hat(prereq_free(dt));
    FormulaSet psi;
    for (const Default& d : flat.defaults)
        psi.insert(d.consequent());

    std::size_t counter = 0;
    std::vector<Atom> fresh;
    for (const Formula& f : psi) {
        std::string name = "_j_" + std::to_string(counter++);
        while (tr.baseAtoms.count(Atom(name)))
            name = "_j_" + std::to_string(counter++);
        Atom a(name);
        tr.freshAtoms.emplace_back(f, a);
        fresh.push_back(a);
        tr.bridge.insert(iff(!Formula::var(a), f));
    }

    FormulaSet world = dt.world;
    world.insert_all(tr.bridge);
    tr.result = DefaultTheory{cwa_defaults(fresh), world};
    return tr;
}

// Checks the translation: the projected extensions must match the source's,
// and for every subset Phi of the consequents, W + Phi must be satisfiable
// exactly when the translated world plus the corresponding negated fresh
// atoms is.
inline bool verify_cwa(const DefaultTheory& dt, const CwaTranslation& tr) {
    if (!semi_equivalent(dt, tr.result, tr.baseAtoms))
        return false;

    const std::size_t n = tr.freshAtoms.size();
    if (n > 20)
        throw Error("translation too large to verify (" + std::to_string(n) + " consequents)");
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        FormulaSet left = dt.world;
        FormulaSet right = tr.result.world;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) {
                left.insert(tr.freshAtoms[i].first);
                right.insert(!Formula::var(tr.freshAtoms[i].second));
            }
        if (satisfiable(left) != satisfiable(right))
            return false;
    }
    return true;
}

} // namespace deflog
