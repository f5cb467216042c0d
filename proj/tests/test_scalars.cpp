#include <catch2/catch_amalgamated.hpp>

#include "qplane/cyclotomic.hpp"
#include "qplane/multipoly.hpp"
#include "qplane/rational.hpp"

#include <map>
#include <vector>

using namespace qplane;

namespace {

// Independent reduction oracle: represent zeta^k as x^k and reduce mod the
// n-th cyclotomic polynomial by plain long division, never calling
// Cyclotomic's own reduction path.
std::vector<Rational> oracle_power_mod(unsigned n, unsigned k) {
    std::vector<Rational> phi = detail::cyclotomic_polynomial(n);
    std::vector<Rational> p(k + 1, Rational(0));
    p[k] = 1;
    // long division remainder
    while (p.size() >= phi.size()) {
        Rational lead = p.back() / phi.back();
        std::size_t shift = p.size() - phi.size();
        for (std::size_t i = 0; i < phi.size(); ++i) p[shift + i] -= lead * phi[i];
        while (!p.empty() && p.back() == 0) p.pop_back();
        if (p.empty()) break;
    }
    p.resize(detail::euler_phi(n), Rational(0));
    return p;
}

std::vector<Rational> coeffs_of(const Cyclotomic& c) {
    return std::vector<Rational>(c.coeffs().begin(), c.coeffs().end());
}

}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-14")) == "-14");
    CHECK(to_string(parse_rational("  7 / -2 ")) == "-7/2");
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("abc"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
}

TEST_CASE("exact rational square roots") {
    Rational out;
    REQUIRE(rational_sqrt(Rational(9, 4), out));
    CHECK(out == Rational(3, 2));
    REQUIRE(rational_sqrt(Rational(0), out));
    CHECK(out == 0);
    CHECK_FALSE(rational_sqrt(Rational(2), out));
    CHECK_FALSE(rational_sqrt(Rational(-1), out));
    CHECK_FALSE(rational_sqrt(Rational(9, 5), out));
}

TEST_CASE("zeta powers match a long-division reduction oracle") {
    for (unsigned n : {2u, 3u, 4u, 6u}) {
        for (unsigned k = 0; k <= 3 * n; ++k) {
            Cyclotomic z = zeta_pow(n, static_cast<long>(k));
            CHECK(coeffs_of(z) == oracle_power_mod(n, k));
        }
    }
}

TEST_CASE("negative zeta powers invert positive ones") {
    for (unsigned n : {2u, 3u, 4u, 6u}) {
        for (long k = 1; k <= 5; ++k) {
            CHECK((zeta_pow(n, -k) * zeta_pow(n, k)).is_rational());
            CHECK(zeta_pow(n, -k) * zeta_pow(n, k) == Cyclotomic::one(n));
        }
    }
}

TEST_CASE("primitivity of the generator for supported orders") {
    for (unsigned n : {2u, 3u, 4u, 6u}) {
        Cyclotomic z = zeta_pow(n, 1);
        Cyclotomic p = Cyclotomic::one(n);
        for (unsigned k = 1; k < n; ++k) {
            p = p * z;
            CHECK(p != Cyclotomic::one(n));  // order is exactly n
        }
        CHECK(p * z == Cyclotomic::one(n));
    }
}

TEST_CASE("(1 + zeta)(1 - zeta) = 2 in the fourth-order field") {
    // Oracle: multiply the raw polynomials (1+x)(1-x) = 1 - x^2 and reduce
    // by x^2 + 1 manually: 1 - x^2 = 2 - (x^2 + 1).
    Cyclotomic z = zeta_pow(4, 1);
    Cyclotomic lhs = (Cyclotomic::one(4) + z) * (Cyclotomic::one(4) - z);
    CHECK(lhs == Cyclotomic::from_int(4, 2));
    CHECK(lhs.is_rational());
    CHECK(lhs.rational_value() == 2);
}

TEST_CASE("field axioms on deterministic samples") {
    for (unsigned n : {2u, 3u, 4u, 6u}) {
        std::vector<Cyclotomic> samples;
        for (int i = 0; i < 5; ++i) {
            Cyclotomic c = Cyclotomic::zero(n);
            for (unsigned j = 0; j < detail::euler_phi(n); ++j)
                c += zeta_pow(n, j) * Rational(2 * i + (int)j - 3, 1 + (int)j);
            samples.push_back(c);
        }
        for (const auto& a : samples)
            for (const auto& b : samples) {
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                CHECK(a * (a + b) == a * a + a * b);
                CHECK(a - b == -(b - a));
                if (!b.is_zero()) {
                    CHECK((a / b) * b == a);
                }
            }
        for (const auto& a : samples) {
            CHECK(a + Cyclotomic::zero(n) == a);
            CHECK(a * Cyclotomic::one(n) == a);
            if (!a.is_zero()) CHECK(a / a == Cyclotomic::one(n));
        }
    }
}

TEST_CASE("division by zero and order mixing are rejected") {
    CHECK_THROWS_AS(Cyclotomic::one(4) / Cyclotomic::zero(4), division_by_zero);
    CHECK_THROWS_AS(Cyclotomic::one(4) + Cyclotomic::one(3), order_mismatch);
    CHECK_THROWS_AS(Cyclotomic::one(2) * zeta_pow(6, 1), order_mismatch);
}

TEST_CASE("string rendering round-trips through coefficients") {
    Cyclotomic c = Cyclotomic::from_rational(4, Rational(-3, 2)) + zeta_pow(4, 1) * Rational(5);
    Cyclotomic c2 = Cyclotomic::from_coeffs(4, coeffs_of(c));
    CHECK(c == c2);
    CHECK(c.str() == "-3/2 + 5*z");
    CHECK(Cyclotomic::zero(6).str() == "0");
}

TEST_CASE("polynomial arithmetic and expansion equality") {
    std::vector<std::string> vars{"x", "y"};
    auto X = MultiPoly::variable(2, vars, "x");
    auto Y = MultiPoly::variable(2, vars, "y");
    auto one = MultiPoly::constant(2, vars, Cyclotomic::one(2));

    // (x + y)^2 == x^2 + 2xy + y^2
    auto lhs = (X + Y) * (X + Y);
    auto rhs = X * X + (X * Y) * Cyclotomic::from_int(2, 2) + Y * Y;
    CHECK(poly_expand_equal(lhs, rhs));
    CHECK_FALSE(poly_expand_equal(lhs, rhs + one));

    // binomial over reordered variable lists
    auto X2 = MultiPoly::variable(2, {"y", "x"}, "x");
    auto Y2 = MultiPoly::variable(2, {"y", "x"}, "y");
    CHECK(poly_expand_equal(lhs, (X2 + Y2) * (X2 + Y2)));
}

TEST_CASE("polynomial substitution") {
    std::vector<std::string> vars{"x", "y"};
    auto X = MultiPoly::variable(2, vars, "x");
    auto Y = MultiPoly::variable(2, vars, "y");
    auto p = X * X + X * Y + Y;  // x^2 + xy + y

    auto at2 = p.substitute(p.var_index("x"), Cyclotomic::from_int(2, 2));
    // 4 + 2y + y = 4 + 3y
    auto expect = MultiPoly::constant(2, vars, Cyclotomic::from_int(2, 4)) +
                  Y * Cyclotomic::from_int(2, 3);
    CHECK(poly_expand_equal(at2, expect));

    std::map<std::string, Cyclotomic> pt{
        {"x", Cyclotomic::from_int(2, 3)}, {"y", Cyclotomic::from_int(2, -1)}};
    CHECK(p.evaluate(pt) == Cyclotomic::from_int(2, 5));
}

TEST_CASE("fraction substitution clears denominators") {
    std::vector<std::string> vars{"x", "a", "b"};
    auto X = MultiPoly::variable(2, vars, "x");
    auto A = MultiPoly::variable(2, vars, "a");
    auto B = MultiPoly::variable(2, vars, "b");
    // p = x^2 - a; substituting x = b/a and clearing a^2 gives b^2 - a^3
    auto p = X * X - A;
    auto r = p.substitute_fraction(p.var_index("x"), B, A);
    CHECK(poly_expand_equal(r, B * B - A * A * A));
}
