#include <catch2/catch_amalgamated.hpp>

#include <deflog/deflog.hpp>

#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace deflog;

namespace {
const Formula a = Formula::var("a");
const Formula b = Formula::var("b");
const Formula p = Formula::var("p");
const Formula q = Formula::var("q");
const Formula r = Formula::var("r");

DefaultTheory theory_of(std::vector<Default> ds, FormulaSet w) {
    DefaultTheory dt;
    dt.defaults = std::move(ds);
    dt.world = std::move(w);
    return dt;
}
} // namespace

TEST_CASE("realizable subsets are decided by greedy admission") {
    // the prerequisite is supplied by the world
    DefaultTheory fed = theory_of({Default(a, FormulaSet{}, b)}, FormulaSet{a});
    auto subs = realizable_subsets(fed);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].defaults.empty());
    REQUIRE(subs[1].defaults.size() == 1);
    CHECK(subs[1].order == std::vector<std::size_t>{0});

    // without the world the prerequisite is unreachable
    DefaultTheory starved = theory_of({Default(a, FormulaSet{}, b)}, {});
    REQUIRE(realizable_subsets(starved).size() == 1);

    // a chain: the second default needs the first one's consequent
    DefaultTheory chain = theory_of(
        {Default(Formula::top(), FormulaSet{}, a), Default(a, FormulaSet{}, b)}, {});
    auto chainSubs = realizable_subsets(chain);
    REQUIRE(chainSubs.size() == 3);
    CHECK(chainSubs[0].defaults.empty());
    CHECK(chainSubs[1].defaults == std::vector<Default>{chain.defaults[0]});
    CHECK(chainSubs[2].defaults == chain.defaults);
    CHECK(chainSubs[2].order == std::vector<std::size_t>{0, 1});
}

TEST_CASE("prerequisite removal on fixed inputs") {
    DefaultTheory one = theory_of({Default(p, FormulaSet{q}, r)}, FormulaSet{p});
    DefaultTheory oneOut = prereq_free(one);
    REQUIRE(oneOut.defaults == std::vector<Default>{Default::justified(FormulaSet{q}, r)});
    CHECK(oneOut.world == one.world);
    CHECK(equivalent(one, oneOut));

    // an already prerequisite-free theory keeps its single default
    DefaultTheory flat = theory_of({Default::justified(FormulaSet{q}, r)}, {});
    DefaultTheory flatOut = prereq_free(flat);
    REQUIRE(flatOut.defaults == flat.defaults);
    CHECK(equivalent(flat, flatOut));

    // a chain produces one merged default per realizable subset
    DefaultTheory chain = theory_of(
        {Default(Formula::top(), FormulaSet{}, a), Default(a, FormulaSet{}, b)}, {});
    DefaultTheory chainOut = prereq_free(chain);
    REQUIRE(chainOut.defaults ==
            std::vector<Default>{Default::justified(FormulaSet{}, a),
                                 Default::justified(FormulaSet{}, a && b)});
    CHECK(equivalent(chain, chainOut));
}

TEST_CASE("prerequisite removal drops only individually contradictory justifications") {
    CHECK(has_contradictory_justification(Default::justified(FormulaSet{p && !p}, q)));
    CHECK_FALSE(has_contradictory_justification(Default::justified(FormulaSet{p, !p}, q)));

    DefaultTheory dead = theory_of({Default::justified(FormulaSet{p && !p}, q)}, {});
    CHECK(prereq_free(dead).defaults.empty());
    CHECK(equivalent(dead, prereq_free(dead)));

    // two defaults whose justifications clash pairwise still matter merged:
    // the two-element subset carries {p, !p} as justifications and fires
    // against any candidate not refuting either one individually
    DefaultTheory clash = theory_of(
        {Default::justified(FormulaSet{p}, a), Default(a, FormulaSet{!p}, b)}, {});
    REQUIRE(oracle::same_extensions({FormulaSet{a, b}}, enumerate_extensions(clash)));

    DefaultTheory clashOut = prereq_free(clash);
    REQUIRE(clashOut.defaults ==
            std::vector<Default>{Default::justified(FormulaSet{p}, a),
                                 Default::justified(FormulaSet{p, !p}, a && b)});
    CHECK(oracle::same_extensions(oracle::brute_extensions(clash),
                                  enumerate_extensions(clashOut)));
}

TEST_CASE("prerequisite removal preserves extensions on random theories") {
    gen::Rng rng(240511);
    const auto pool = gen::pool(4);
    for (int i = 0; i < 100; ++i) {
        DefaultTheory dt = rng.theory(pool, 3, 2, 2);
        DefaultTheory out = prereq_free(dt);
        CAPTURE(serialize_theory(dt), serialize_theory(out));
        for (const Default& d : out.defaults)
            REQUIRE(is_prereq_free(d));
        REQUIRE(out.world == dt.world);
        REQUIRE(oracle::same_extensions(oracle::brute_extensions(dt),
                                        enumerate_extensions(out)));
    }
}

TEST_CASE("hat normalization rewrites justification sets into normal defaults") {
    DefaultTheory two = theory_of({Default::justified(FormulaSet{a, b}, a && b)}, {});
    CHECK(normalize_hat(two).defaults == std::vector<Default>{Default::normal(a && b)});

    DefaultTheory one = theory_of({Default::justified(FormulaSet{a}, a)}, {});
    CHECK(normalize_hat(one).defaults == std::vector<Default>{Default::normal(a)});

    DefaultTheory blockedWorld =
        theory_of({Default::justified(FormulaSet{a, b}, a && b)}, FormulaSet{!a});
    DefaultTheory blockedOut = normalize_hat(blockedWorld);
    CHECK(blockedOut.defaults == std::vector<Default>{Default::normal(a && b)});
    CHECK(oracle::same_extensions({FormulaSet{!a}}, enumerate_extensions(blockedWorld)));
    CHECK(oracle::same_extensions({FormulaSet{!a}}, enumerate_extensions(blockedOut)));
    CHECK(equivalent(blockedWorld, blockedOut));
}

TEST_CASE("hat normalization rejects defaults outside its input shape") {
    DefaultTheory prereqful = theory_of({Default(p, FormulaSet{q}, q)}, {});
    CHECK_THROWS_MATCHES(normalize_hat(prereqful), PreconditionError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("default #1")));

    DefaultTheory mismatched =
        theory_of({Default::justified(FormulaSet{a, b}, a)}, {});
    try {
        normalize_hat(mismatched);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == "bad-shape");
    }

    // semantically equivalent consequents are accepted even if reassociated
    DefaultTheory assoc =
        theory_of({Default::justified(FormulaSet{a, b}, b && a)}, {});
    CHECK(normalize_hat(assoc).defaults == std::vector<Default>{Default::normal(a && b)});
}

TEST_CASE("normal theories survive the removal-then-normalize pipeline") {
    gen::Rng rng(620314);
    const auto pool = gen::pool(4);
    for (int i = 0; i < 80; ++i) {
        DefaultTheory dt = rng.normal_theory(pool, 3, 2, false);
        DefaultTheory out = normalize_hat(prereq_free(dt));
        CAPTURE(serialize_theory(dt), serialize_theory(out));
        REQUIRE(is_normal(out));
        for (const Default& d : out.defaults)
            REQUIRE(is_prereq_free(d));
        REQUIRE(oracle::same_extensions(oracle::brute_extensions(dt),
                                        enumerate_extensions(out)));
    }
}

TEST_CASE("formula elimination on fixed inputs") {
    DefaultTheory pair = theory_of({Default::normal(p), Default::normal(!p)}, {});
    DefaultTheory noP = eliminate_formula(pair, p);
    REQUIRE(noP.defaults.size() == 3);
    CHECK(noP.defaults.back() == Default(p, FormulaSet{}, Formula::bottom()));
    CHECK(oracle::same_extensions({FormulaSet{!p}}, enumerate_extensions(noP)));

    // eliminating a formula the world itself forces: the consistent
    // extension disappears, and enumeration finds that the whole language
    // now passes the fixpoint test (the added rule fires inside it)
    DefaultTheory bare = theory_of({}, FormulaSet{q});
    DefaultTheory noQ = eliminate_formula(bare, q);
    ExtensionSet got = enumerate_extensions(noQ);
    REQUIRE(oracle::same_extensions(oracle::brute_extensions(noQ), got));
    REQUIRE(got.size() == 1);
    CHECK(got[0].inconsistent());

    // eliminating a formula outside the sole extension changes nothing
    DefaultTheory lone = theory_of({Default::normal(p)}, {});
    CHECK(oracle::same_extensions({FormulaSet{p}},
                                  enumerate_extensions(eliminate_formula(lone, q))));
}

TEST_CASE("elimination keeps exactly the consistent extensions avoiding the formula") {
    gen::Rng rng(830920);
    const auto pool = gen::pool(4);
    for (int i = 0; i < 100; ++i) {
        DefaultTheory dt = rng.theory(pool, 3, 2, 2);
        Formula f = rng.formula(pool, 2);
        DefaultTheory cut = eliminate_formula(dt, f);
        ExtensionSet base = enumerate_extensions(dt);
        ExtensionSet got = enumerate_extensions(cut);
        CAPTURE(serialize_theory(dt), to_string(f));

        std::vector<FinTheory> want;
        for (const FinTheory& e : base)
            if (!e.inconsistent() && !e.contains(f))
                want.push_back(e);
        std::vector<FinTheory> gotConsistent;
        for (const FinTheory& e : got)
            if (!e.inconsistent())
                gotConsistent.push_back(e);
        REQUIRE(ExtensionSet::from_members(want) ==
                ExtensionSet::from_members(gotConsistent));

        // when the input has extensions at all, elimination never adds any
        if (base.size() > 0)
            REQUIRE(got.size() <= base.size());
    }
}

TEST_CASE("elimination can introduce the inconsistent fixpoint on extensionless input") {
    // the lone default blocks itself, so there are no extensions; eliminating
    // a world consequence makes the whole language a fixpoint of the enlarged
    // theory, so the count can grow from zero to one
    DefaultTheory noext =
        theory_of({Default::justified(FormulaSet{!p}, p)}, FormulaSet{q});
    REQUIRE(enumerate_extensions(noext).size() == 0);
    DefaultTheory cut = eliminate_formula(noext, q);
    ExtensionSet got = enumerate_extensions(cut);
    REQUIRE(oracle::same_extensions(oracle::brute_extensions(cut), got));
    REQUIRE(got.size() == 1);
    CHECK(got[0].inconsistent());
}

TEST_CASE("distinct representatives on fixed families") {
    TheoryFamily direct({FinTheory(FormulaSet{p}), FinTheory(FormulaSet{q})});
    auto found = find_ssdr(direct);
    REQUIRE(found.has_value());
    REQUIRE(found->size() == 2);
    for (const auto& [i, phi] : *found) {
        CHECK(direct[i].contains(phi));
        for (std::size_t j = 0; j < direct.size(); ++j)
            if (j != i)
                CHECK_FALSE(direct[j].contains(phi));
    }

    // one member inside another: the smaller member has no private formula
    TheoryFamily nested({FinTheory(FormulaSet{p}), FinTheory(FormulaSet{p && q})});
    CHECK_FALSE(find_ssdr(nested).has_value());

    TheoryFamily opposed({FinTheory(FormulaSet{p}), FinTheory(FormulaSet{!p})});
    CHECK(find_ssdr(opposed).has_value());
}

TEST_CASE("subfamily selection eliminates the discarded members") {
    DefaultTheory pair = theory_of({Default::normal(p), Default::normal(!p)}, {});
    TheoryFamily fam({FinTheory(FormulaSet{p}), FinTheory(FormulaSet{!p})});

    DefaultTheory first = represent_subfamily(pair, fam, {0});
    CHECK(first.defaults.size() == 3);
    CHECK(oracle::same_extensions({FormulaSet{p}}, enumerate_extensions(first)));

    DefaultTheory second = represent_subfamily(pair, fam, {1});
    CHECK(oracle::same_extensions({FormulaSet{!p}}, enumerate_extensions(second)));

    DefaultTheory all = represent_subfamily(pair, fam, {0, 1});
    CHECK(equivalent(pair, all));

    DefaultTheory none = represent_subfamily(pair, fam, {});
    CHECK(enumerate_extensions(none).size() == 0);
}

TEST_CASE("subfamily selection validates its inputs") {
    DefaultTheory pair = theory_of({Default::normal(p), Default::normal(!p)}, {});
    TheoryFamily fam({FinTheory(FormulaSet{p}), FinTheory(FormulaSet{!p})});
    TheoryFamily wrong({FinTheory(FormulaSet{q})});

    CHECK_THROWS_AS(represent_subfamily(pair, fam, {7}), Error);

    try {
        represent_subfamily(pair, wrong, {0});
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == "not-representing");
    }

    // a contradictory world makes the whole language the only extension;
    // it cannot be eliminated, only kept
    DefaultTheory contra = theory_of({}, FormulaSet{p, !p});
    TheoryFamily lfam({FinTheory::whole_language()});
    CHECK(equivalent(contra, represent_subfamily(contra, lfam, {0})));
    try {
        represent_subfamily(contra, lfam, {});
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == "inconsistent-member");
    }
}

TEST_CASE("world absorption on fixed inputs") {
    DefaultTheory lone = theory_of({Default::normal(p)}, FormulaSet{q});
    DefaultTheory loneOut = to_empty_w(lone);
    CHECK(loneOut.world.empty());
    REQUIRE(loneOut.defaults == std::vector<Default>{Default::normal(p && q)});
    CHECK(oracle::same_extensions({FormulaSet{p, q}}, enumerate_extensions(loneOut)));
    CHECK(equivalent(lone, loneOut));

    // the world refutes the only justification: collapse to the world alone
    DefaultTheory refuted = theory_of({Default::normal(!q)}, FormulaSet{q});
    DefaultTheory refutedOut = to_empty_w(refuted);
    CHECK(refutedOut.world.empty());
    REQUIRE(refutedOut.defaults == std::vector<Default>{Default::normal(q)});
    CHECK(oracle::same_extensions({FormulaSet{q}}, enumerate_extensions(refutedOut)));
    CHECK(equivalent(refuted, refutedOut));

    DefaultTheory pair =
        theory_of({Default::normal(p), Default::normal(!p)}, FormulaSet{r});
    DefaultTheory pairOut = to_empty_w(pair);
    CHECK(pairOut.world.empty());
    REQUIRE(pairOut.defaults == std::vector<Default>{Default::normal(p && r),
                                                     Default::normal(!p && r)});
    CHECK(oracle::same_extensions({FormulaSet{p, r}, FormulaSet{!p, r}},
                                  enumerate_extensions(pairOut)));
}

TEST_CASE("world absorption validates its inputs") {
    DefaultTheory notNormal = theory_of({Default::justified(FormulaSet{p}, q)}, {});
    try {
        to_empty_w(notNormal);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == "not-normal");
    }

    DefaultTheory badWorld = theory_of({Default::normal(p)}, FormulaSet{q, !q});
    try {
        to_empty_w(badWorld);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == "unsat-world");
    }
}

TEST_CASE("world absorption preserves extensions on random normal theories") {
    gen::Rng rng(118999);
    const auto pool = gen::pool(4);
    for (int i = 0; i < 80; ++i) {
        DefaultTheory dt = rng.normal_theory(pool, 3, 2, true);
        DefaultTheory out = to_empty_w(dt);
        CAPTURE(serialize_theory(dt), serialize_theory(out));
        REQUIRE(out.world.empty());
        REQUIRE(is_normal(out));
        REQUIRE(oracle::same_extensions(oracle::brute_extensions(dt),
                                        enumerate_extensions(out)));
    }
}
