#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <deflog/deflog.hpp>

namespace dl = deflog;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Globals {
    bool json = false;
    std::size_t maxDefaults = 16;
    int rc = 0;
};

void ensure_guard(std::size_t count, const Globals& g, const std::string& what) {
    if (count > g.maxDefaults)
        throw dl::Error("enumeration over " + std::to_string(count) + " defaults (" + what +
                        ") exceeds --max-defaults " + std::to_string(g.maxDefaults));
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t'))
        --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos)
            next = s.size();
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
        if (next == s.size())
            break;
    }
    return out;
}

dl::FormulaSet parse_semicolon_list(const std::string& text) {
    dl::FormulaSet out;
    for (const std::string& piece : split(text, ';')) {
        std::string t = trim(piece);
        if (!t.empty())
            out.insert(dl::parse_formula(t));
    }
    return out;
}

std::vector<dl::Atom> parse_atom_list(const std::string& text) {
    std::vector<dl::Atom> out;
    for (const std::string& piece : split(text, ',')) {
        std::string t = trim(piece);
        if (!t.empty())
            out.emplace_back(t);
    }
    return out;
}

std::set<std::size_t> parse_index_list(const std::string& text) {
    std::set<std::size_t> out;
    for (const std::string& piece : split(text, ',')) {
        std::string t = trim(piece);
        if (t.empty())
            continue;
        for (char c : t)
            if (c < '0' || c > '9')
                throw dl::Error("invalid index '" + t + "' in --keep");
        out.insert(std::size_t(std::stoul(t)));
    }
    return out;
}

// Generators of an extension in reduced form: the world plus the consequents
// of the generating defaults; the inconsistent extension reduces to {false}.
dl::FormulaSet reduced_generators(const dl::DefaultTheory& dt, const dl::FinTheory& e) {
    if (e.inconsistent())
        return dl::FormulaSet{dl::Formula::bottom()};
    dl::FormulaSet gens = dt.world;
    for (const dl::Default& d : dl::generating_defaults(dt, e))
        gens.insert(d.consequent());
    return gens;
}

ordered_json extension_json(const dl::DefaultTheory& dt, const dl::FinTheory& e) {
    dl::FormulaSet gens = reduced_generators(dt, e);
    ordered_json gj = ordered_json::array();
    for (const dl::Formula& f : gens)
        gj.push_back(dl::to_string(f));
    return ordered_json{{"generators", gj},
                        {"conjunction", dl::to_string(dl::conjunction(gens))},
                        {"inconsistent", e.inconsistent()}};
}

ordered_json theory_json(const dl::DefaultTheory& dt) {
    ordered_json w = ordered_json::array();
    for (const dl::Formula& f : dt.world)
        w.push_back(dl::to_string(f));
    ordered_json ds = ordered_json::array();
    for (const dl::Default& d : dt.defaults) {
        ordered_json js = ordered_json::array();
        for (const dl::Formula& g : d.justifications())
            js.push_back(dl::to_string(g));
        ds.push_back(ordered_json{{"prereq", dl::to_string(d.prereq())},
                                  {"justifications", js},
                                  {"consequent", dl::to_string(d.consequent())}});
    }
    return ordered_json{{"world", w}, {"defaults", ds}};
}

void print_extensions_text(const dl::DefaultTheory& dt, const dl::ExtensionSet& ext) {
    std::cout << "extensions: " << ext.size() << "\n";
    for (const dl::FinTheory& e : ext)
        std::cout << "  Cn(" << dl::to_string(dl::conjunction(reduced_generators(dt, e)))
                  << ")\n";
}

ordered_json extensions_json_array(const dl::DefaultTheory& dt, const dl::ExtensionSet& ext) {
    ordered_json arr = ordered_json::array();
    for (const dl::FinTheory& e : ext)
        arr.push_back(extension_json(dt, e));
    return arr;
}

// Emits a transformed theory to stdout or, with -o, to a file.
void emit_theory(const Globals& g, const std::string& command, const dl::DefaultTheory& dt,
                 const std::string& outPath, const std::string& header = "") {
    std::string body = header + dl::serialize_theory(dt);
    if (!outPath.empty())
        dl::write_file(outPath, body);
    if (g.json) {
        ordered_json j{{"command", command}, {"theory", theory_json(dt)}};
        if (!outPath.empty())
            j["output"] = outPath;
        std::cout << j.dump(2) << "\n";
    } else if (outPath.empty()) {
        std::cout << body;
    } else {
        std::cout << "wrote " << outPath << "\n";
    }
}

dl::DefaultTheory load_world_only(const std::string& path, const std::string& command) {
    dl::DefaultTheory dt = dl::load_theory(path);
    if (!dt.defaults.empty())
        throw dl::Error(command + " expects a theory file with no 'd' statements");
    return dt;
}

void run_extensions(Globals& g, const std::string& file) {
    dl::DefaultTheory dt = dl::load_theory(file);
    ensure_guard(dt.defaults.size(), g, file);
    dl::ExtensionSet ext = dl::enumerate_extensions(dt);
    if (g.json)
        std::cout << ordered_json{{"command", "extensions"},
                                  {"file", file},
                                  {"count", ext.size()},
                                  {"extensions", extensions_json_array(dt, ext)}}
                         .dump(2)
                  << "\n";
    else
        print_extensions_text(dt, ext);
    g.rc = ext.empty() ? 1 : 0;
}

void run_check(Globals& g, const std::string& file, const std::string& theoryArg) {
    dl::DefaultTheory dt = dl::load_theory(file);
    dl::FinTheory s(parse_semicolon_list(theoryArg));
    bool ok = dl::is_extension(dt, s);
    if (g.json)
        std::cout << ordered_json{{"command", "check"}, {"is_extension", ok}}.dump(2) << "\n";
    else
        std::cout << "is-extension: " << (ok ? "yes" : "no") << "\n";
    g.rc = ok ? 0 : 1;
}

void run_equiv(Globals& g, const std::string& a, const std::string& b) {
    dl::DefaultTheory dta = dl::load_theory(a);
    dl::DefaultTheory dtb = dl::load_theory(b);
    ensure_guard(dta.defaults.size(), g, a);
    ensure_guard(dtb.defaults.size(), g, b);
    bool eq = dl::equivalent(dta, dtb);
    if (g.json)
        std::cout << ordered_json{{"command", "equiv"}, {"equivalent", eq}}.dump(2) << "\n";
    else
        std::cout << "equivalent: " << (eq ? "yes" : "no") << "\n";
    g.rc = eq ? 0 : 1;
}

void run_prereq_free(Globals& g, const std::string& file, const std::string& out) {
    dl::DefaultTheory dt = dl::load_theory(file);
    ensure_guard(dt.defaults.size(), g, file);
    std::size_t dropped = 0;
    for (const dl::Default& d : dt.defaults)
        if (dl::has_contradictory_justification(d))
            ++dropped;
    if (dropped > 0)
        std::cerr << "note: dropped " << dropped
                  << " default(s) with a contradictory justification\n";
    emit_theory(g, "prereq-free", dl::prereq_free(dt), out);
}

void run_normalize(Globals& g, const std::string& file, const std::string& out) {
    emit_theory(g, "normalize", dl::normalize_hat(dl::load_theory(file)), out);
}

void run_eliminate(Globals& g, const std::string& file, const std::string& formula,
                   const std::string& out) {
    dl::DefaultTheory dt = dl::load_theory(file);
    emit_theory(g, "eliminate", dl::eliminate_formula(dt, dl::parse_formula(formula)), out);
}

void run_subfamily(Globals& g, const std::string& file, const std::string& famFile,
                   const std::string& keepArg) {
    dl::DefaultTheory dt = dl::load_theory(file);
    dl::TheoryFamily fam = dl::load_family(famFile);
    ensure_guard(dt.defaults.size(), g, file);
    emit_theory(g, "subfamily", dl::represent_subfamily(dt, fam, parse_index_list(keepArg)),
                "");
}

void run_represent(Globals& g, const std::string& famFile, const std::string& out) {
    emit_theory(g, "represent", dl::construct_representing(dl::load_family(famFile)), out);
}

void run_represent_normal(Globals& g, const std::string& wFile, const std::string& psiFile) {
    dl::FormulaSet w = dl::load_formula_list(wFile);
    dl::FormulaSet psi = dl::load_formula_list(psiFile);
    emit_theory(g, "represent-normal", dl::construct_normal_representing(w, psi), "");
}

void run_to_empty_w(Globals& g, const std::string& file, const std::string& out) {
    dl::DefaultTheory dt = dl::load_theory(file);
    ensure_guard(dt.defaults.size(), g, file);
    emit_theory(g, "to-empty-w", dl::to_empty_w(dt), out);
}

void run_cwa(Globals& g, const std::string& file, const std::string& out) {
    dl::DefaultTheory dt = dl::load_theory(file);
    ensure_guard(dt.defaults.size(), g, file);
    dl::CwaTranslation tr = dl::cwa_translate(dt);
    std::string header;
    for (const auto& [psi, atom] : tr.freshAtoms)
        header += "# " + atom.name() + " stands for " + dl::to_string(psi) + "\n";
    if (g.json) {
        ordered_json fresh = ordered_json::array();
        for (const auto& [psi, atom] : tr.freshAtoms)
            fresh.push_back(
                ordered_json{{"atom", atom.name()}, {"consequent", dl::to_string(psi)}});
        ordered_json bridge = ordered_json::array();
        for (const dl::Formula& f : tr.bridge)
            bridge.push_back(dl::to_string(f));
        ordered_json base = ordered_json::array();
        for (const dl::Atom& a : tr.baseAtoms)
            base.push_back(a.name());
        ordered_json j{{"command", "cwa"},
                       {"fresh_atoms", fresh},
                       {"bridge", bridge},
                       {"base_atoms", base},
                       {"theory", theory_json(tr.result)}};
        if (!out.empty()) {
            dl::write_file(out, header + dl::serialize_theory(tr.result));
            j["output"] = out;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        emit_theory(g, "cwa", tr.result, out, header);
    }
}

void run_comp(Globals& g, const std::string& file, const std::string& atomsArg) {
    dl::DefaultTheory base = load_world_only(file, "comp");
    std::vector<dl::Atom> atoms = parse_atom_list(atomsArg);
    dl::DefaultTheory dt{dl::comp_defaults(atoms), base.world};
    ensure_guard(dt.defaults.size(), g, "completion defaults");
    dl::ExtensionSet ext = dl::enumerate_extensions(dt);
    if (g.json) {
        std::cout << ordered_json{{"command", "comp"},
                                  {"theory", theory_json(dt)},
                                  {"count", ext.size()},
                                  {"extensions", extensions_json_array(dt, ext)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << dl::serialize_theory(dt);
        print_extensions_text(dt, ext);
    }
}

void run_tree(Globals& g, const std::string& file, const std::string& atomsArg) {
    dl::DefaultTheory base = load_world_only(file, "tree");
    std::vector<dl::Atom> atoms = parse_atom_list(atomsArg);
    dl::DefaultTheory dt = dl::tree_defaults(base.world, atoms);
    ensure_guard(dt.defaults.size(), g, "tree defaults");
    dl::ExtensionSet ext = dl::enumerate_extensions(dt);
    if (g.json) {
        std::cout << ordered_json{{"command", "tree"},
                                  {"theory", theory_json(dt)},
                                  {"count", ext.size()},
                                  {"extensions", extensions_json_array(dt, ext)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << dl::serialize_theory(dt);
        print_extensions_text(dt, ext);
    }
}

struct VerifyResult {
    std::string name;
    std::string status;   // "pass", "fail", "skip"
    std::string reason;
};

void run_verify(Globals& g, const std::string& file) {
    dl::DefaultTheory dt = dl::load_theory(file);
    ensure_guard(dt.defaults.size(), g, file);

    std::vector<VerifyResult> results;
    auto record = [&](const std::string& name, bool ok) {
        results.push_back({name, ok ? "pass" : "fail", ""});
    };
    auto skip = [&](const std::string& name, const std::string& reason) {
        results.push_back({name, "skip", reason});
    };

    dl::ExtensionSet ext = dl::enumerate_extensions(dt);

    {
        bool ok = true;
        for (const dl::FinTheory& e : ext)
            ok = ok && dl::is_extension(dt, e);
        record("extensions-fixpoint", ok);
    }
    {
        bool ok = true;
        for (const dl::FinTheory& e : ext)
            ok = ok && dl::theory_equal(e, dl::FinTheory(reduced_generators(dt, e)));
        record("extensions-generating", ok);
    }
    {
        bool ok = true;
        for (std::size_t i = 0; i < ext.size() && ok; ++i)
            for (std::size_t j = 0; j < ext.size(); ++j)
                if (i != j && dl::theory_included(ext[i], ext[j])) {
                    ok = false;
                    break;
                }
        record("extensions-antichain", ok);
    }
    if (dl::satisfiable(dt.world)) {
        skip("inconsistent-world", "world is satisfiable");
    } else {
        record("inconsistent-world",
               ext.size() == 1 && ext[0].inconsistent());
    }

    dl::DefaultTheory flat = dl::prereq_free(dt);
    ensure_guard(flat.defaults.size(), g, "prerequisite-free conversion");
    record("prereq-free-equivalent", dl::equivalent(dt, flat));

    if (dl::is_normal(dt)) {
        dl::DefaultTheory hat = dl::normalize_hat(flat);
        record("normal-hat-equivalent", dl::is_normal(hat) && dl::equivalent(dt, hat));
    } else {
        skip("normal-hat-equivalent", "theory is not normal");
    }

    {
        std::set<dl::Atom> atoms = dl::atoms_of(dt);
        if (atoms.empty()) {
            skip("eliminate-consistent", "theory has no atoms");
        } else {
            bool ok = true;
            for (const dl::Atom& a : atoms) {
                dl::Formula f = dl::Formula::var(a);
                dl::DefaultTheory elim = dl::eliminate_formula(dt, f);
                ensure_guard(elim.defaults.size(), g, "elimination");
                std::vector<dl::FinTheory> expect;
                for (const dl::FinTheory& e : ext)
                    if (!e.inconsistent() && !e.contains(f))
                        expect.push_back(e);
                std::vector<dl::FinTheory> got;
                for (const dl::FinTheory& e : dl::enumerate_extensions(elim))
                    if (!e.inconsistent())
                        got.push_back(e);
                ok = ok && dl::ExtensionSet::from_members(expect) ==
                               dl::ExtensionSet::from_members(got);
            }
            record("eliminate-consistent", ok);
        }
    }

    if (ext.empty()) {
        skip("represent-roundtrip", "theory has no extensions");
    } else {
        dl::TheoryFamily fam(std::vector<dl::FinTheory>(ext.begin(), ext.end()));
        dl::DefaultTheory rep = dl::construct_representing(fam);
        ensure_guard(rep.defaults.size(), g, "representing theory");
        std::vector<dl::FinTheory> members(fam.begin(), fam.end());
        record("represent-roundtrip",
               dl::enumerate_extensions(rep) == dl::ExtensionSet::from_members(members));
    }

    if (!dl::is_normal(dt)) {
        skip("empty-world-equivalent", "theory is not normal");
    } else if (!dl::satisfiable(dt.world)) {
        skip("empty-world-equivalent", "world is unsatisfiable");
    } else {
        dl::DefaultTheory ew = dl::to_empty_w(dt);
        ensure_guard(ew.defaults.size(), g, "empty-world conversion");
        record("empty-world-equivalent", ew.world.empty() && dl::equivalent(dt, ew));
    }

    if (!dl::is_normal(dt)) {
        skip("cwa-projection", "theory is not normal");
    } else {
        dl::CwaTranslation tr = dl::cwa_translate(dt);
        ensure_guard(tr.result.defaults.size(), g, "closed-world translation");
        record("cwa-projection", dl::verify_cwa(dt, tr));
    }

    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const VerifyResult& r : results) {
        if (r.status == "pass")
            ++passed;
        else if (r.status == "fail")
            ++failed;
        else
            ++skipped;
    }

    if (g.json) {
        ordered_json arr = ordered_json::array();
        for (const VerifyResult& r : results) {
            ordered_json item{{"name", r.name}, {"status", r.status}};
            if (!r.reason.empty())
                item["reason"] = r.reason;
            arr.push_back(item);
        }
        std::cout << ordered_json{{"command", "verify"},
                                  {"file", file},
                                  {"results", arr},
                                  {"passed", passed},
                                  {"failed", failed},
                                  {"skipped", skipped}}
                         .dump(2)
                  << "\n";
    } else {
        for (const VerifyResult& r : results) {
            if (r.status == "pass")
                std::cout << "PASS " << r.name << "\n";
            else if (r.status == "fail")
                std::cout << "FAIL " << r.name << "\n";
            else
                std::cout << "SKIP " << r.name << " (" << r.reason << ")\n";
        }
        std::cout << "verify: " << passed << " passed, " << failed << " failed, " << skipped
                  << " skipped\n";
    }
    g.rc = failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deflog — propositional default logic engine"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Globals g;
    app.add_flag("--json", g.json, "emit machine-readable JSON");
    app.add_option("--max-defaults", g.maxDefaults,
                   "abort enumeration beyond this many defaults")
        ->capture_default_str();

    std::string file, fileB, out, formula, theoryArg, famFile, keepArg, atomsArg, wFile,
        psiFile;

    auto* cExt = app.add_subcommand("extensions", "enumerate all extensions of a theory");
    cExt->add_option("file", file, "theory file")->required();
    cExt->callback([&] { run_extensions(g, file); });

    auto* cCheck = app.add_subcommand("check", "test whether Cn of the given formulas is an extension");
    cCheck->add_option("file", file, "theory file")->required();
    cCheck->add_option("--theory", theoryArg, "semicolon-separated generator formulas")
        ->required();
    cCheck->callback([&] { run_check(g, file, theoryArg); });

    auto* cEquiv = app.add_subcommand("equiv", "test whether two theories have the same extensions");
    cEquiv->add_option("file", file, "first theory file")->required();
    cEquiv->add_option("other", fileB, "second theory file")->required();
    cEquiv->callback([&] { run_equiv(g, file, fileB); });

    auto* cPf = app.add_subcommand("prereq-free", "convert to an equivalent prerequisite-free theory");
    cPf->add_option("file", file, "theory file")->required();
    cPf->add_option("-o,--output", out, "write the result to a file");
    cPf->callback([&] { run_prereq_free(g, file, out); });

    auto* cNorm = app.add_subcommand("normalize", "rewrite :Gamma//\\Gamma defaults as normal defaults");
    cNorm->add_option("file", file, "theory file")->required();
    cNorm->add_option("-o,--output", out, "write the result to a file");
    cNorm->callback([&] { run_normalize(g, file, out); });

    auto* cElim = app.add_subcommand("eliminate", "add a default eliminating extensions containing a formula");
    cElim->add_option("file", file, "theory file")->required();
    cElim->add_option("--formula", formula, "formula to eliminate")->required();
    cElim->add_option("-o,--output", out, "write the result to a file");
    cElim->callback([&] { run_eliminate(g, file, formula, out); });

    auto* cSub = app.add_subcommand("subfamily", "restrict a theory's extensions to chosen family members");
    cSub->add_option("file", file, "theory file")->required();
    cSub->add_option("--family", famFile, "family file listing the theory's extensions")
        ->required();
    cSub->add_option("--keep", keepArg, "comma-separated member indices to keep")->required();
    cSub->callback([&] { run_subfamily(g, file, famFile, keepArg); });

    auto* cRep = app.add_subcommand("represent", "build a theory whose extensions are the given family");
    cRep->add_option("family", famFile, "family file")->required();
    cRep->add_option("-o,--output", out, "write the result to a file");
    cRep->callback([&] { run_represent(g, famFile, out); });

    auto* cRepN = app.add_subcommand("represent-normal",
                                     "build the normal theory {:f/f} over psi with world w");
    cRepN->add_option("--w", wFile, "formula list file for the world")->required();
    cRepN->add_option("--psi", psiFile, "formula list file for the defaults")->required();
    cRepN->callback([&] { run_represent_normal(g, wFile, psiFile); });

    auto* cEw = app.add_subcommand("to-empty-w", "convert a normal theory to one with empty world");
    cEw->add_option("file", file, "theory file")->required();
    cEw->add_option("-o,--output", out, "write the result to a file");
    cEw->callback([&] { run_to_empty_w(g, file, out); });

    auto* cCwa = app.add_subcommand("cwa", "translate a normal theory to closed-world form");
    cCwa->add_option("file", file, "theory file")->required();
    cCwa->add_option("-o,--output", out, "write the result to a file");
    cCwa->callback([&] { run_cwa(g, file, out); });

    auto* cComp = app.add_subcommand("comp", "completion defaults over given atoms plus a world");
    cComp->add_option("file", file, "world-only theory file")->required();
    cComp->add_option("--atoms", atomsArg, "comma-separated atoms")->required();
    cComp->callback([&] { run_comp(g, file, atomsArg); });

    auto* cTree = app.add_subcommand("tree", "sign-prefix defaults over listed atoms consistent with a world");
    cTree->add_option("file", file, "world-only theory file")->required();
    cTree->add_option("--atoms", atomsArg, "comma-separated atoms in order")->required();
    cTree->callback([&] { run_tree(g, file, atomsArg); });

    auto* cVerify = app.add_subcommand("verify", "run every applicable engine property against a theory");
    cVerify->add_option("file", file, "theory file")->required();
    cVerify->callback([&] { run_verify(g, file); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const dl::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dl::PreconditionError& e) {
        std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        return 1;
    } catch (const dl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g.rc;
}
