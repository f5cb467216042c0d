#include <catch2/catch_amalgamated.hpp>

#include "qplane/algebra.hpp"

using namespace qplane;

namespace {

Cyclotomic Q(unsigned n, long p, long q = 1) {
    return Cyclotomic::from_rational(n, canonical(Rational(p, q)));
}

}  // namespace

TEST_CASE("basis key validation") {
    CHECK_NOTHROW(BasisKey::inner(2, {1, 0}));
    CHECK_NOTHROW(BasisKey::inner(2, {1, 2}));
    CHECK_THROWS_AS(BasisKey::inner(2, {2, -4}), invalid_basis_key);
    CHECK_NOTHROW(BasisKey::witt(2, {2, -4}, 1));
    CHECK_THROWS_AS(BasisKey::witt(2, {1, 0}, 1), invalid_basis_key);
    CHECK_THROWS_AS(BasisKey::witt(2, {0, 0}, 3), invalid_basis_key);
    CHECK_NOTHROW(BasisKey::witt(3, {3, -6}, 2));
    CHECK_THROWS_AS(BasisKey::inner(3, {3, -6}), invalid_basis_key);
}

TEST_CASE("central monomial characterization") {
    CHECK(is_central_monomial(2, {2, 4}));
    CHECK_FALSE(is_central_monomial(2, {1, 2}));
    CHECK(is_central_monomial(3, {3, -6}));
    CHECK(is_central_monomial(2, {0, 0}));
    CHECK_FALSE(is_central_monomial(6, {2, 3}));
}

TEST_CASE("pairing evaluates the direction form") {
    auto d1 = DirectionForm::basis(4, 1);
    CHECK(pairing(d1, {Q(4, 3), Q(4, 7)}) == Q(4, 3));
    DirectionForm d12{Q(4, 1), Q(4, 1)};
    CHECK(pairing(d12, {Q(4, 0), Q(4, 0)}).is_zero());
    DirectionForm d{Q(4, 2), Q(4, -1)};
    CHECK(pairing(d, {Q(4, 1), Q(4, 1)}) == Q(4, 1));
    CHECK(pairing(d, ExpVec{1, 1}) == Q(4, 1));
}

TEST_CASE("bracket of two inner monomials") {
    // q = -1: coefficient q^(m2*n1) - q^(m1*n2) = (-1)^0 - (-1)^1 = 2
    auto u = LieElement::inner(2, {1, 0});
    auto v = LieElement::inner(2, {0, 1});
    auto uv = bracket(u, v);
    auto expect = LieElement::monomial(2, BasisKey::inner(2, {1, 1}), Q(2, 2));
    CHECK(uv == expect);
    CHECK(bracket(v, u) == -expect);
}

TEST_CASE("bracket is alternating") {
    for (unsigned N : {2u, 3u, 4u}) {
        for (const auto& k : basis_keys_in_box(N, 1)) {
            auto u = LieElement::monomial(N, k);
            CHECK(bracket(u, u).is_zero());
        }
        // also on a non-homogeneous element
        auto u = LieElement::inner(N, {1, 0}) +
                 LieElement::witt(N, {0, 0}, 2) * Q(N, 3, 2);
        CHECK(bracket(u, u).is_zero());
    }
}

TEST_CASE("mixed bracket applies the direction to the monomial exponent") {
    auto w = LieElement::witt(2, {2, 0}, 1);
    auto x = LieElement::inner(2, {1, 0});
    CHECK(bracket(w, x) == LieElement::inner(2, {3, 0}));
    CHECK(bracket(x, w) == -LieElement::inner(2, {3, 0}));
    // direction 2 against an exponent with m2 = 0 kills the term
    auto w2 = LieElement::witt(2, {2, 0}, 2);
    CHECK(bracket(w2, x).is_zero());
}

TEST_CASE("degree derivations scale monomials by their exponent") {
    for (unsigned N : {2u, 3u, 6u}) {
        for (long m1 = -3; m1 <= 3; ++m1)
            for (long m2 = -3; m2 <= 3; ++m2) {
                ExpVec m{m1, m2};
                if (in_lattice(m, N)) continue;
                auto x = LieElement::inner(N, m);
                CHECK(bracket(LieElement::witt(N, {0, 0}, 1), x) == x * Q(N, m1));
                CHECK(bracket(LieElement::witt(N, {0, 0}, 2), x) == x * Q(N, m2));
            }
    }
}

TEST_CASE("witt-witt bracket") {
    // [x^k d_s, x^j d_t] = j_s x^(k+j) d_t - k_t x^(k+j) d_s
    auto a = LieElement::witt(2, {2, 0}, 1);
    // j_1 = 0 and k_2 = 0, so the bracket with x^{(0,2)}d2 vanishes termwise
    CHECK(bracket(a, LieElement::witt(2, {0, 2}, 2)).is_zero());

    // same direction, j_1 = k_1 = 2: the two contributions cancel
    CHECK(bracket(a, LieElement::witt(2, {2, 2}, 1)).is_zero());

    // [x^{(2,2)}d1, x^{(2,0)}d2]: j_1 = 2 lands on d2, -k_2 = -2 on d1
    auto c = LieElement::witt(2, {2, 2}, 1);
    auto e = LieElement::witt(2, {2, 0}, 2);
    LieElement expect(2);
    expect.add(BasisKey::witt(2, {4, 2}, 2), Q(2, 2));
    expect.add(BasisKey::witt(2, {4, 2}, 1), Q(2, -2));
    CHECK(bracket(c, e) == expect);
    CHECK(bracket(e, c) == -expect);
}

TEST_CASE("automatic vanishing on central target degrees") {
    // m + n in N*Z^2 forces the inner-inner coefficient to vanish exactly
    for (unsigned N : {2u, 3u, 4u}) {
        long n = static_cast<long>(N);
        for (long m1 = -n; m1 <= n; ++m1)
            for (long m2 = -n; m2 <= n; ++m2) {
                ExpVec m{m1, m2};
                if (in_lattice(m, N)) continue;
                ExpVec mm = ExpVec{n, n} - m;  // m + mm = (N, N) in N*Z^2
                if (in_lattice(mm, N)) continue;
                Cyclotomic c = zeta_pow(N, m.m2 * mm.m1) - zeta_pow(N, m.m1 * mm.m2);
                CHECK(c.is_zero());
                CHECK(bracket(LieElement::inner(N, m), LieElement::inner(N, mm)).is_zero());
            }
    }
}

TEST_CASE("center characterization at the coefficient level") {
    // bracket(x^m, x^e1) and bracket(x^m, x^e2) vanish for all valid probes
    // exactly when q^{m2} - 1 = 0 and 1 - q^{m1} = 0
    for (unsigned N : {2u, 3u, 4u, 6u}) {
        long n = static_cast<long>(N);
        for (long m1 = -n; m1 <= n; ++m1)
            for (long m2 = -n; m2 <= n; ++m2) {
                ExpVec m{m1, m2};
                Cyclotomic c1 = zeta_pow(N, m.m2) - Cyclotomic::one(N);  // vs x^{(1,0)}
                Cyclotomic c2 = Cyclotomic::one(N) - zeta_pow(N, m.m1);  // vs x^{(0,1)}
                bool commutes = c1.is_zero() && c2.is_zero();
                CHECK(commutes == is_central_monomial(N, m));
            }
    }
}

TEST_CASE("jacobi identity holds on small windows") {
    for (unsigned N : {2u, 3u}) {
        auto rep = verify_jacobi(N, 1);
        CHECK(rep.violations.empty());
        auto keys = basis_keys_in_box(N, 1);
        CHECK(rep.triples_checked ==
              static_cast<unsigned long long>(keys.size()) * keys.size() * keys.size());
    }
}

TEST_CASE("basis key counts in a window") {
    // N=2, K=2: 5x5 grid, 9 lattice points giving 18 witt keys, 16 inner keys
    CHECK(basis_keys_in_box(2, 2).size() == 34);
    // N=3, K=1: 3x3 grid, only (0,0) in the lattice: 2 witt + 8 inner
    CHECK(basis_keys_in_box(3, 1).size() == 10);
}

TEST_CASE("grading of homogeneous brackets") {
    auto u = LieElement::inner(2, {1, 0});
    auto w = LieElement::witt(2, {2, 0}, 1);
    CHECK(grading_check(u, w));
    CHECK(grading_check(u, u));  // vacuous: bracket is zero
    CHECK(grading_check(w, LieElement::witt(2, {0, 2}, 2)));
    auto mixed = u + w;
    CHECK_THROWS_AS(grading_check(mixed, u), std::invalid_argument);

    auto d = bracket(LieElement::witt(2, {2, 0}, 1), LieElement::witt(2, {0, 2}, 2));
    for (const auto& [k, c] : d.terms()) CHECK(k.exp == ExpVec{2, 2});
}

TEST_CASE("order mismatch is rejected") {
    CHECK_THROWS_AS(bracket(LieElement::inner(2, {1, 0}), LieElement::inner(3, {1, 0})),
                    order_mismatch);
}

TEST_CASE("element rendering") {
    auto e = LieElement::monomial(2, BasisKey::inner(2, {1, 1}), Q(2, 2));
    CHECK(e.str() == "2*x[1,1]");
    CHECK(LieElement(2).str() == "0");
    auto f = LieElement::witt(2, {2, 0}, 1);
    CHECK(f.str() == "x[2,0]d1");
}
