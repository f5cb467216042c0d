// Command-line front end: bracket computation, verification suites, the
// order-2 classification solver, and orbit labeling. Exit codes: 0 all
// checks pass, 1 violations found, 2 usage/parse error, 3 unsupported
// scale for the requested operation.

#include "qplane/io.hpp"
#include "qplane/sampling.hpp"
#include "qplane/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

// the independent enumerator shared with the test suite
#include "../tests/oracle.hpp"

namespace {

using namespace qplane;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

struct Options {
    unsigned N = 2;
    long K = 3;
    std::string format = "text";
    std::uint64_t seed = 1;
    bool fold = false;
    std::size_t samples = 20;
    int a = 0;
    std::vector<std::string> alpha{"0", "0"};
    std::string b = "0";
    std::string spec_path;
    std::vector<std::string> elements;
};

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

int cmd_bracket(const Options& opt) {
    LieElement u = parse_element(opt.N, opt.elements.at(0));
    LieElement v = parse_element(opt.N, opt.elements.at(1));
    LieElement w = bracket(u, v);
    emit(opt, to_json(w), w.str());
    return kExitOk;
}

int cmd_check_algebra(const Options& opt) {
    JacobiReport rep = verify_jacobi(opt.N, opt.K);
    emit(opt, to_json(rep),
         "jacobi: " + std::to_string(rep.triples_checked) + " triples, " +
             std::to_string(rep.violations.size()) + " violations");
    return rep.violations.empty() ? kExitOk : kExitViolations;
}

ModuleSpec load_spec(const Options& opt) {
    if (!opt.spec_path.empty()) {
        std::ifstream in(opt.spec_path);
        if (!in) throw parse_error("cannot open spec file " + opt.spec_path, 0);
        json j = json::parse(in);
        return module_spec_from_json(opt.N, j);
    }
    WeightPair alpha{parse_scalar(opt.N, opt.alpha.at(0)),
                     parse_scalar(opt.N, opt.alpha.at(1))};
    return ClosedFormSpec(opt.N, opt.a, alpha, parse_scalar(opt.N, opt.b));
}

int cmd_check_module(const Options& opt) {
    ModuleSpec spec = load_spec(opt);
    AxiomReport rep = verify_module_axiom(spec, opt.N, Window({0, 0}, opt.K));
    emit(opt, to_json(rep),
         "module axiom: " + std::to_string(rep.combos_checked) + " combos, " +
             std::to_string(rep.combos_skipped) + " skipped, " +
             std::to_string(rep.violations.size()) + " violations");
    return rep.ok() ? kExitOk : kExitViolations;
}

int cmd_check_identities(const Options& opt) {
    bool det_ok = verify_det_identity();
    SampleGen gen(opt.seed);
    std::vector<Case3Sample> samples;
    for (std::size_t i = 0; i < opt.samples; ++i) samples.push_back(gen.case3());
    Case3Report rep = verify_case3_consequences(samples);
    json j{{"det_identity", det_ok}, {"case3", to_json(rep)}};
    emit(opt, j,
         std::string("det identity: ") + (det_ok ? "ok" : "FAILED") +
             "\ncase3: dichotomy " + (rep.dichotomy_ok ? "ok" : "FAILED") +
             ", residual " + (rep.residual_identically_zero ? "zero" : "NONZERO") +
             ", " + std::to_string(rep.samples.size()) + " samples" +
             (rep.ok() ? ", all force vanishing" : ", FAILURES present"));
    return (det_ok && rep.ok()) ? kExitOk : kExitViolations;
}

bool oracle_matches(const SolveResult& r) {
    oracle::Result ref = oracle::enumerate_solutions();
    if (ref.stalled != 0 || ref.dropped_free != 0) return false;
    if (ref.tables.size() != r.orbits.size()) return false;
    std::set<std::size_t> matched;
    for (const auto& t : ref.tables) {
        CTable rt(2);
        for (int j = 0; j < 12; ++j) {
            auto m = oracle::rows()[static_cast<std::size_t>(j / 4)];
            auto i = oracle::cols()[static_cast<std::size_t>(j % 4)];
            const auto& v = t[static_cast<std::size_t>(j)];
            if (v != 0)
                rt.set({m.first, m.second}, {i.first, i.second},
                       Cyclotomic::from_rational(2, v));
        }
        bool hit = false;
        for (std::size_t k = 0; k < r.orbits.size(); ++k)
            if (gauge_equivalent(rt, r.orbits[k].representative)) {
                if (matched.count(k)) return false;
                matched.insert(k);
                hit = true;
            }
        if (!hit) return false;
    }
    return matched.size() == r.orbits.size();
}

int cmd_solve(const Options& opt, bool with_labels) {
    if (opt.N != 2) {
        std::cerr << "solve: classification is only established at order 2\n";
        return kExitUnsupported;
    }
    EquationSystem sys = build_system(opt.N);
    SolveResult r = solve(sys);
    bool verified = !r.unverified && r.stalled_branches == 0 &&
                    r.nonrational_branches == 0 && r.dropped_free == 0;
    for (const auto& orbit : r.orbits)
        if (!verify_solution(sys, orbit.representative)) verified = false;
    bool oracle_checked = verified && oracle_matches(r);

    ClassificationReport rep = classify(r.orbits, with_labels && opt.fold);
    json j = to_json(rep, opt.N, oracle_checked);

    std::string text = std::to_string(rep.orbits.size()) + " orbits:";
    for (const auto& co : rep.orbits) {
        text += "\n  " + co.orbit.label;
        if (co.orbit.label == "family-2.24") text += " @ " + co.offset.str();
        text += " | " + std::to_string(co.orbit.representative.support().size()) +
                " nonzero entries" + (co.decomposable ? " | decomposable" : "");
    }
    text += oracle_checked ? "\ncross-check: ok" : "\ncross-check: FAILED";
    emit(opt, j, text);
    return (verified && oracle_checked) ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in the derivation algebra of the quantum "
                 "plane at a root of unity"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--N", opt.N, "root-of-unity order")->default_val(2);
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->default_val("text");
    };

    CLI::App* bracket = app.add_subcommand("bracket", "bracket of two elements");
    add_common(bracket);
    bracket->add_option("elements", opt.elements, "two elements")->expected(2);

    CLI::App* calg = app.add_subcommand("check-algebra", "Jacobi identity suite");
    add_common(calg);
    calg->add_option("--K", opt.K, "exponent box radius")->default_val(2);

    CLI::App* cmod = app.add_subcommand("check-module", "representation axiom suite");
    add_common(cmod);
    cmod->add_option("--K", opt.K, "window radius")->default_val(3);
    cmod->add_option("--a", opt.a, "closed-form parameter a (0 or 1)");
    cmod->add_option("--alpha", opt.alpha, "weight offset (two scalars)")->expected(2);
    cmod->add_option("--b", opt.b, "closed-form parameter b");
    cmod->add_option("--spec", opt.spec_path, "module spec JSON file");

    CLI::App* cid = app.add_subcommand("check-identities", "symbolic identity suite");
    add_common(cid);
    cid->add_option("--seed", opt.seed, "sample seed")->default_val(1);
    cid->add_option("--samples", opt.samples, "sample count")->default_val(20);

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve the classification system");
    add_common(solve_cmd);

    CLI::App* cls = app.add_subcommand("classify", "solve and label the orbits");
    add_common(cls);
    cls->add_flag("--fold", opt.fold, "merge coordinate-swap partner orbits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bracket->parsed()) return cmd_bracket(opt);
        if (calg->parsed()) return cmd_check_algebra(opt);
        if (cmod->parsed()) return cmd_check_module(opt);
        if (cid->parsed()) return cmd_check_identities(opt);
        if (solve_cmd->parsed()) return cmd_solve(opt, false);
        if (cls->parsed()) return cmd_solve(opt, true);
    } catch (const qplane::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
