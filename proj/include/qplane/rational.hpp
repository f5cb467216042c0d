#pragma once

// Exact rational scalars. GMP's mpq_class already maintains the canonical
// form we need (lowest terms, positive denominator, 0/1 for zero).

#include <gmpxx.h>

#include <stdexcept>
#include <cctype>
#include <string>
#include <string_view>

namespace qplane {

using BigInt = mpz_class;
using Rational = mpq_class;

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// mpq_class(num, den) does not reduce to lowest terms on its own; every
// library entry point accepting a Rational runs it through here.
inline Rational canonical(Rational r) {
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "p" or "p/q" with optional signs and surrounding whitespace.
inline Rational parse_rational(std::string_view s) {
    auto read_int = [&](std::size_t& i) -> BigInt {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) throw parse_error("expected integer", start);
        return BigInt(std::string(s.substr(start, i - start)), 10);
    };
    std::size_t i = 0;
    BigInt num = read_int(i);
    BigInt den = 1;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '/') {
        std::size_t slash = i++;
        den = read_int(i);
        if (den == 0) throw parse_error("zero denominator", slash + 1);
    }
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i != s.size()) throw parse_error("trailing characters in rational", i);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_perfect_square(const BigInt& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Exact square root of a rational, if one exists.
inline bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    const BigInt& num = r.get_num();
    const BigInt& den = r.get_den();
    if (!is_perfect_square(num) || !is_perfect_square(den)) return false;
    BigInt sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    out = Rational(sn, sd);
    return true;
}

}  // namespace qplane
