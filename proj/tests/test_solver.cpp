#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qplane/solver.hpp"

#include <set>

using namespace qplane;

namespace {

Cyclotomic Q2(long p, long q = 1) {
    return Cyclotomic::from_rational(2, canonical(Rational(p, q)));
}

CTable table_from_oracle(const oracle::Table& t) {
    CTable c(2);
    for (int j = 0; j < 12; ++j) {
        auto m = oracle::rows()[static_cast<std::size_t>(j / 4)];
        auto i = oracle::cols()[static_cast<std::size_t>(j % 4)];
        const auto& v = t[static_cast<std::size_t>(j)];
        if (v != 0)
            c.set({m.first, m.second}, {i.first, i.second},
                  Cyclotomic::from_rational(2, v));
    }
    return c;
}

const SolveResult& solved() {
    static const SolveResult r = solve(build_system(2));
    return r;
}

}  // namespace

TEST_CASE("system construction counts and pruning") {
    EquationSystem sys = build_system(2);
    CHECK(sys.unknowns.size() == 12);
    CHECK(sys.names.size() == 12);
    CHECK(sys.raw_count == 36);
    CHECK(sys.pruned_trivial == 12);
    CHECK(sys.pruned_duplicates == 12);
    CHECK(sys.equations.size() == 12);

    EquationSystem sys3 = build_system(3);
    CHECK(sys3.unknowns.size() == 72);
    CHECK(sys3.raw_count == 576);
    CHECK(sys3.pruned_trivial == 72);
    CHECK(sys3.pruned_duplicates == 252);
    CHECK(sys3.equations.size() == 252);

    CHECK_THROWS_AS(build_system(1), std::invalid_argument);
}

TEST_CASE("right-hand-side coefficient at order two") {
    // m = (1,0), n = (0,1): q^{m2 n1} - q^{m1 n2} = q^0 - q^1 = 2 at q = -1
    CHECK(zeta_pow(2, 0) - zeta_pow(2, 1) == Q2(2));
    // the closed-form full-support table solves the system, so the built
    // equations carry the right structure constants
    CHECK(verify_solution(build_system(2), closed_form_table(2, 0)));
    for (ExpVec o : detail::residues(2))
        CHECK(verify_solution(build_system(2), closed_form_table(2, 1, o)));
}

TEST_CASE("gauge action and canonicalization") {
    CTable c = closed_form_table(2, 0);
    std::map<ExpVec, Cyclotomic> t{{{0, 0}, Q2(3)},
                                   {{0, 1}, Q2(-1, 2)},
                                   {{1, 0}, Q2(7, 5)},
                                   {{1, 1}, Q2(2)}};
    GaugeTransform g(2, t);
    CTable scaled = gauge_apply(g, c);
    CHECK_FALSE(scaled == c);
    SECTION("gauging preserves the solution property") {
        CHECK(verify_solution(build_system(2), scaled));
    }
    SECTION("canonical forms of gauge-related tables agree") {
        CHECK(gauge_canonicalize(scaled).first == gauge_canonicalize(c).first);
        CHECK(gauge_equivalent(scaled, c));
    }
    SECTION("canonicalization is idempotent") {
        CTable canon = gauge_canonicalize(c).first;
        CHECK(gauge_canonicalize(canon).first == canon);
    }
    SECTION("the returned transform realizes the canonical form") {
        auto [canon, fix] = gauge_canonicalize(scaled);
        CHECK(gauge_apply(fix, scaled) == canon);
    }
    SECTION("zero scales are rejected") {
        std::map<ExpVec, Cyclotomic> bad = t;
        bad[{1, 0}] = Q2(0);
        CHECK_THROWS_AS(GaugeTransform(2, bad), std::invalid_argument);
    }
    SECTION("inequivalent tables stay inequivalent") {
        CHECK_FALSE(gauge_equivalent(c, CTable(2)));
        CHECK_FALSE(gauge_equivalent(c, closed_form_table(2, 1)));
    }
}

TEST_CASE("solver finds exactly six orbits, all verified") {
    const SolveResult& r = solved();
    CHECK(r.order == 2);
    CHECK_FALSE(r.unverified);
    CHECK(r.patterns_explored == 4096);
    CHECK(r.stalled_branches == 0);
    CHECK(r.nonrational_branches == 0);
    CHECK(r.dropped_free == 0);
    REQUIRE(r.orbits.size() == 6);

    EquationSystem sys = build_system(2);
    std::size_t trivial_count = 0;
    for (const auto& orbit : r.orbits) {
        CHECK(verify_solution(sys, orbit.representative));
        CHECK(orbit.canonical);
        // representatives are already gauge-fixed
        CHECK(gauge_canonicalize(orbit.representative).first ==
              orbit.representative);
        CHECK(orbit.free_parameters.empty());
        CHECK(orbit.zero_pattern.size() + orbit.representative.support().size() ==
              12);
        if (orbit.representative.support().empty()) ++trivial_count;
    }
    CHECK(trivial_count == 1);

    SECTION("orbits are pairwise gauge-inequivalent") {
        for (std::size_t a = 0; a < r.orbits.size(); ++a)
            for (std::size_t b = a + 1; b < r.orbits.size(); ++b)
                CHECK_FALSE(gauge_equivalent(r.orbits[a].representative,
                                             r.orbits[b].representative));
    }
}

TEST_CASE("solver output matches the independent enumerator") {
    oracle::Result ref = oracle::enumerate_solutions();
    CHECK(ref.stalled == 0);
    CHECK(ref.dropped_free == 0);
    REQUIRE(ref.tables.size() == 6);

    const SolveResult& r = solved();
    REQUIRE(r.orbits.size() == ref.tables.size());
    // bijection under gauge equivalence
    std::set<std::size_t> matched;
    for (const auto& t : ref.tables) {
        CTable rt = table_from_oracle(t);
        CHECK(verify_solution(build_system(2), rt));
        std::size_t hits = 0, which = 0;
        for (std::size_t k = 0; k < r.orbits.size(); ++k)
            if (gauge_equivalent(rt, r.orbits[k].representative)) {
                ++hits;
                which = k;
            }
        CHECK(hits == 1);
        matched.insert(which);
    }
    CHECK(matched.size() == 6);
}

TEST_CASE("orbits match the closed-form reference tables") {
    const SolveResult& r = solved();
    auto count_equivalent = [&](const CTable& ref) {
        std::size_t n = 0;
        for (const auto& orbit : r.orbits)
            if (gauge_equivalent(orbit.representative, ref)) ++n;
        return n;
    };
    CHECK(count_equivalent(closed_form_table(2, 0)) == 1);
    for (ExpVec o : detail::residues(2))
        CHECK(count_equivalent(closed_form_table(2, 1, o)) == 1);
    CHECK(count_equivalent(CTable(2)) == 1);
}

TEST_CASE("coordinate swap maps solutions to solutions") {
    EquationSystem sys = build_system(2);
    const SolveResult& r = solved();
    for (const auto& orbit : r.orbits)
        CHECK(verify_solution(sys, swap_image(orbit.representative)));
}

TEST_CASE("classification labels, offsets and connectivity") {
    const SolveResult& r = solved();
    ClassificationReport rep = classify(r.orbits);
    REQUIRE(rep.orbits.size() == 6);

    std::map<std::string, std::size_t> counts;
    std::set<ExpVec> offsets;
    for (const auto& co : rep.orbits) {
        ++counts[co.orbit.label];
        if (co.orbit.label == "family-2.24") {
            offsets.insert(co.offset);
            CHECK_FALSE(co.connected);
            CHECK(co.decomposable);
        }
        if (co.orbit.label == "family-2.22") {
            CHECK(co.connected);
            CHECK_FALSE(co.decomposable);
            CHECK(co.swap_self);
        }
        if (co.orbit.label == "trivial") {
            CHECK(co.decomposable);
            CHECK(co.swap_self);
        }
    }
    CHECK(counts["trivial"] == 1);
    CHECK(counts["family-2.22"] == 1);
    CHECK(counts["family-2.24"] == 4);
    CHECK(counts.count("other") == 0);
    CHECK(offsets.size() == 4);  // one translate per residue class

    SECTION("labels are gauge invariant") {
        std::map<ExpVec, Cyclotomic> t{{{0, 0}, Q2(2)},
                                       {{0, 1}, Q2(-3)},
                                       {{1, 0}, Q2(1, 4)},
                                       {{1, 1}, Q2(5)}};
        GaugeTransform g(2, t);
        std::vector<SolutionOrbit> gauged = r.orbits;
        for (auto& o : gauged) {
            o.representative = gauge_apply(g, o.representative);
            o.canonical = false;
        }
        ClassificationReport rep2 = classify(gauged);
        REQUIRE(rep2.orbits.size() == rep.orbits.size());
        for (std::size_t k = 0; k < rep.orbits.size(); ++k) {
            CHECK(rep2.orbits[k].orbit.label == rep.orbits[k].orbit.label);
            CHECK(rep2.orbits[k].offset == rep.orbits[k].offset);
        }
    }

    SECTION("folding the swap symmetry merges one translate pair") {
        ClassificationReport folded = classify(r.orbits, true);
        CHECK(folded.orbits.size() == 5);
        CHECK(folded.folded_away == 1);
    }
}

TEST_CASE("determinant factorization identity") {
    CHECK(verify_det_identity());

    // spot check of the factored form at A=1, J=2, K=3, B1=2, B2=5:
    // (J-K) K (B2-B1) (A (B1+B2-1) + J B1 B2) = (-1)(3)(3)(6+20) = -234
    std::vector<std::string> vars{"A", "J", "K", "B1", "B2"};
    auto V = [&](const std::string& n) { return MultiPoly::variable(2, vars, n); };
    MultiPoly a11 = V("A") + V("B2") * V("K"), a12 = -(V("A") + V("B1") * V("K"));
    MultiPoly a21 = V("A") + V("B2") * V("J"), a23 = -(V("A") + V("B1") * V("J"));
    MultiPoly a32 = V("A") + V("K") + V("B2") * (V("J") - V("K"));
    MultiPoly a33 = -(V("A") + V("K") + V("B1") * (V("J") - V("K")));
    MultiPoly det = a11 * (-(a23 * a32)) - a12 * (a21 * a33);
    std::map<std::string, Cyclotomic> pt{{"A", Q2(1)}, {"J", Q2(2)}, {"K", Q2(3)},
                                         {"B1", Q2(2)}, {"B2", Q2(5)}};
    CHECK(det.evaluate(pt) == Q2(-234));
    pt["B1"] = pt["B2"];  // equal b-values kill the determinant
    CHECK(det.evaluate(pt) == Q2(0));
}

TEST_CASE("case-3 consequences") {
    std::vector<Case3Sample> samples{
        {Rational(1), Rational(2), Rational(3), Rational(1), Rational(2),
         Rational(5), Rational(4)},
        {canonical(Rational(1, 3)), Rational(1), canonical(Rational(1, 2)),
         Rational(-2), Rational(7), Rational(-1), canonical(Rational(5, 7))}};
    Case3Report rep = verify_case3_consequences(samples);
    CHECK(rep.dichotomy_ok);
    CHECK(rep.residual_identically_zero);
    REQUIRE(rep.samples.size() == 2);
    for (const auto& s : rep.samples) {
        CHECK(s.coefficient != 0);
        CHECK(s.residual == 0);
        CHECK(s.forces_zero);
    }
    CHECK(rep.ok());

    SECTION("degenerate samples are rejected") {
        Case3Sample bad = samples[0];
        bad.kdprime = bad.kprime;  // equal probe values: the factor vanishes
        CHECK_THROWS_AS(verify_case3_consequences({bad}), degenerate_sample);
        Case3Report lax = verify_case3_consequences({bad}, true);
        REQUIRE(lax.samples.size() == 1);
        CHECK(lax.samples[0].coefficient == 0);
        CHECK_FALSE(lax.samples[0].forces_zero);
        CHECK_FALSE(lax.ok());

        Case3Sample sing = samples[0];
        sing.ntilde = canonical(-sing.iprime);  // undefined anchor
        CHECK_THROWS_AS(verify_case3_consequences({sing}, true), degenerate_sample);
    }
}

TEST_CASE("orbit representatives lift to coefficient-table modules") {
    const SolveResult& r = solved();
    WeightPair alpha{Cyclotomic::from_rational(2, canonical(Rational(1, 3))),
                     Cyclotomic::from_rational(2, canonical(Rational(1, 2)))};
    for (const auto& orbit : r.orbits) {
        GenericSpec spec = lift_to_module(orbit.representative, alpha, Q2(5, 7));
        AxiomReport ax = verify_module_axiom(spec, 2, Window({0, 0}, 3));
        CHECK(ax.ok());
        BGroupReport bg = group_by_b(spec);
        CHECK(bg.closure_violations.empty());
        CHECK(bg.groups.size() == 1);  // constant b over the residue classes
    }
}

TEST_CASE("higher orders report the trivial orbit as unverified") {
    SolveResult r = solve(build_system(3));
    CHECK(r.unverified);
    REQUIRE(r.orbits.size() == 1);
    CHECK(r.orbits[0].representative.support().empty());
    CHECK(r.orbits[0].zero_pattern.size() == 72);
    CHECK(verify_solution(build_system(3), r.orbits[0].representative));
}
