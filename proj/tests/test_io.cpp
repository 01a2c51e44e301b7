#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <deflog/deflog.hpp>

#include "support/gen.hpp"

using namespace deflog;

namespace {
const Formula p = Formula::var("p");
const Formula q = Formula::var("q");

TheoryDocument doc_of(const std::string& text) {
    return parse_theory_document(text, "input");
}
} // namespace

TEST_CASE("theory documents parse world and default statements") {
    TheoryDocument doc = doc_of("w p | q .\nd : !p / q .\n");
    REQUIRE(doc.worldLines.size() == 1);
    CHECK(doc.worldLines[0].first == (p || q));
    CHECK(doc.worldLines[0].second == 1);
    REQUIRE(doc.defaultLines.size() == 1);
    CHECK(doc.defaultLines[0].first == Default::justified(FormulaSet{!p}, q));
    CHECK(doc.defaultLines[0].second == 2);

    DefaultTheory dt = doc.to_theory();
    CHECK(dt.world == FormulaSet{p || q});
    CHECK(dt.defaults.size() == 1);
}

TEST_CASE("default statements support every shape") {
    const Formula a = Formula::var("a");
    const Formula b = Formula::var("b");
    const Formula c = Formula::var("c");
    const Formula e = Formula::var("e");

    // full form with a prerequisite and two justifications
    TheoryDocument full = doc_of("d a : b, c / e .");
    REQUIRE(full.defaultLines.size() == 1);
    CHECK(full.defaultLines[0].first == Default(a, FormulaSet{b, c}, e));

    // omitted prerequisite defaults to a tautology
    CHECK(doc_of("d : p / p .").defaultLines[0].first == Default::normal(p));
    CHECK(doc_of("d: p / p .").defaultLines[0].first == Default::normal(p));

    // explicitly empty justification list
    CHECK(doc_of("d p : / q .").defaultLines[0].first == Default(p, FormulaSet{}, q));

    // compound formulas in every slot
    CHECK(doc_of("d a & b : !c / b -> e .").defaultLines[0].first ==
          Default(a && b, FormulaSet{!c}, implies(b, e)));
}

TEST_CASE("comments and blank lines are ignored") {
    TheoryDocument doc = doc_of("# heading\n\n   \nw p .   # trailing note\n# d : q / q .\n");
    REQUIRE(doc.worldLines.size() == 1);
    CHECK(doc.worldLines[0].second == 4);
    CHECK(doc.defaultLines.empty());

    CHECK(doc_of("").worldLines.empty());
    CHECK(doc_of("\n\n").defaultLines.empty());
}

TEST_CASE("theory document errors carry source, line, and column") {
    try {
        doc_of("w p .\nw p & .\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.source() == "input");
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).rfind("input:2:", 0) == 0);
    }

    CHECK_THROWS_AS(doc_of("w p"), SyntaxError);                 // missing '.'
    CHECK_THROWS_AS(doc_of("x p ."), SyntaxError);               // unknown head
    CHECK_THROWS_AS(doc_of("d p / q ."), SyntaxError);           // missing ':'
    CHECK_THROWS_AS(doc_of("d p : q ."), SyntaxError);           // missing '/'
    CHECK_THROWS_AS(doc_of("w .\n"), SyntaxError);               // empty formula
    CHECK_THROWS_AS(doc_of("weird ."), SyntaxError);             // head not delimited
    CHECK_THROWS_AS(doc_of("d : p, / q ."), SyntaxError);        // empty justification

    try {
        doc_of("w p .\nw q .\nw p .\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 3);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("already on line 1"));
    }

    try {
        doc_of("d : p / p .\nd : p / p .\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("duplicate default"));
    }
}

TEST_CASE("serialized defaults use the statement grammar") {
    CHECK(serialize_default(Default::normal(p)) == "d : p / p .");
    CHECK(serialize_default(Default(Formula::var("a"), FormulaSet{Formula::var("b"),
                                                                  Formula::var("c")},
                                    Formula::var("e"))) == "d a : b, c / e .");
    CHECK(serialize_default(Default(p, FormulaSet{}, q)) == "d p : / q .");
    CHECK(serialize_default(Default::justified(FormulaSet{!p}, p && q)) ==
          "d : !p / p & q .");
    // a non-structural tautology still prints as a prerequisite
    CHECK(serialize_default(Default(p || !p, FormulaSet{q}, q)) ==
          "d p | !p : q / q .");
}

TEST_CASE("theories round-trip through serialization") {
    gen::Rng rng(330022);
    const auto pool = gen::pool(4);
    for (int i = 0; i < 60; ++i) {
        DefaultTheory dt = rng.theory(pool, 3, 2, 2);
        TheoryDocument doc = doc_of(serialize_theory(dt));
        DefaultTheory back = doc.to_theory();
        CAPTURE(serialize_theory(dt));
        REQUIRE(back.world == dt.world);
        REQUIRE(back.defaults == dt.defaults);
    }
}

TEST_CASE("family documents parse theory blocks") {
    FamilyDocument doc =
        parse_family_document("theory { p . }\ntheory {\n  q .\n  p | q .\n}\n", "fam");
    REQUIRE(doc.blocks.size() == 2);
    CHECK(doc.blocks[0] == FormulaSet{p});
    CHECK(doc.blocks[1] == FormulaSet{q, p || q});

    // an empty block is the trivial theory, as serialize_family emits it
    FamilyDocument trivial = parse_family_document("theory { }", "fam");
    REQUIRE(trivial.blocks.size() == 1);
    CHECK(trivial.blocks[0].empty());

    CHECK_THROWS_AS(parse_family_document("", "fam"), SyntaxError);
    CHECK_THROWS_AS(parse_family_document("theory { p . ", "fam"), SyntaxError);
    CHECK_THROWS_AS(parse_family_document("p .", "fam"), SyntaxError);
    CHECK_THROWS_AS(parse_family_document("theory { p }", "fam"), SyntaxError);
}

TEST_CASE("families round-trip through serialization") {
    TheoryFamily fam({FinTheory(FormulaSet{p}), FinTheory(FormulaSet{q, p || q})});
    FamilyDocument doc = parse_family_document(serialize_family(fam), "fam");
    REQUIRE(doc.blocks.size() == 2);
    CHECK(doc.blocks[0] == FormulaSet{p});
    CHECK(doc.blocks[1] == FormulaSet{q, p || q});
}

TEST_CASE("formula list files hold one statement per line") {
    FormulaSet fs = parse_formula_list("p .\nq & p .\n# note\n\n", "list");
    CHECK(fs == FormulaSet{p, q && p});
    CHECK(parse_formula_list("", "list").empty());
    CHECK_THROWS_AS(parse_formula_list("p\n", "list"), SyntaxError);
    CHECK_THROWS_AS(parse_formula_list("p . q .\n", "list"), SyntaxError);
}

TEST_CASE("loading theories and families from disk") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "deflog_io_test";
    fs::create_directories(dir);

    fs::path good = dir / "good.dlt";
    write_file(good.string(), "w p .\nd : q / q .\n");
    DefaultTheory dt = load_theory(good.string());
    CHECK(dt.world == FormulaSet{p});
    CHECK(dt.defaults == std::vector<Default>{Default::normal(q)});

    fs::path fam = dir / "fam.dlf";
    write_file(fam.string(), "theory { p . }\ntheory { q . }\n");
    CHECK(load_family(fam.string()).size() == 2);

    // duplicate blocks are rejected at family construction
    fs::path dup = dir / "dup.dlf";
    write_file(dup.string(), "theory { p . }\ntheory { p . }\n");
    CHECK_THROWS_AS(load_family(dup.string()), Error);

    CHECK_THROWS_AS(load_theory((dir / "absent.dlt").string()), Error);

    fs::path list = dir / "w.txt";
    write_file(list.string(), "p | q .\n");
    CHECK(load_formula_list(list.string()) == FormulaSet{p || q});

    fs::remove_all(dir);
}

TEST_CASE("syntax errors from files name the file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "deflog_io_test2";
    fs::create_directories(dir);
    fs::path bad = dir / "broken.dlt";
    write_file(bad.string(), "w p .\nw q & .\n");
    try {
        load_theory(bad.string());
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("broken.dlt:2:"));
    }
    fs::remove_all(dir);
}
