#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_N), elements stored in the
// power basis {1, z, ..., z^(phi(N)-1)} reduced modulo the N-th cyclotomic
// polynomial. The generator z is the canonical primitive N-th root.

#include "qplane/rational.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace qplane {

struct order_mismatch : std::runtime_error {
    order_mismatch(unsigned a, unsigned b)
        : std::runtime_error("cyclotomic order mismatch: " + std::to_string(a) +
                             " vs " + std::to_string(b)) {}
};

struct division_by_zero : std::runtime_error {
    division_by_zero() : std::runtime_error("division by zero in Q(zeta_N)") {}
};

namespace detail {

using Poly = std::vector<Rational>;  // dense, low-degree-first

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

inline Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    poly_trim(a);
    return a;
}

// Quotient and remainder of a by b (b nonzero).
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        poly_trim(a);
    }
    poly_trim(q);
    return {q, a};
}

// Extended Euclid: returns (g, s) with s*a = g (mod m), g the monic gcd.
inline std::pair<Poly, Poly> poly_half_ext_gcd(Poly a, Poly m) {
    Poly s0{Rational(1)}, s1{};
    while (!m.empty()) {
        auto [q, r] = poly_divmod(a, m);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        a = std::move(m);
        m = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!a.empty() && a.back() != 1) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
        for (auto& c : s0) c /= lead;
    }
    return {a, s0};
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Phi_N(x) = (x^N - 1) / prod_{d | N, d < N} Phi_d(x), computed recursively.
inline const Poly& cyclotomic_polynomial(unsigned n) {
    static std::map<unsigned, Poly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // iterative fill so recursion stays within the lock
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        Poly num(d + 1, Rational(0));
        num[0] = -1;
        num[d] = 1;
        for (unsigned e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            num = poly_divmod(num, cache.at(e)).first;
        }
        cache.emplace(d, std::move(num));
    }
    return cache.at(n);
}

}  // namespace detail

class Cyclotomic {
  public:
    Cyclotomic() : order_(2), coeffs_(1, Rational(0)) {}

    static Cyclotomic zero(unsigned n) { return Cyclotomic(n); }
    static Cyclotomic one(unsigned n) { return from_rational(n, Rational(1)); }

    static Cyclotomic from_rational(unsigned n, const Rational& r) {
        Cyclotomic c(n);
        c.coeffs_[0] = canonical(r);
        return c;
    }
    static Cyclotomic from_int(unsigned n, long v) {
        return from_rational(n, Rational(v));
    }

    // zeta_N^(k mod N), reduced in the power basis.
    static Cyclotomic zeta_pow(unsigned n, long k) {
        if (n < 2) throw std::invalid_argument("cyclotomic order must be >= 2");
        long e = k % static_cast<long>(n);
        if (e < 0) e += n;
        detail::Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
        p.back() = 1;
        Cyclotomic c(n);
        c.assign_reduced(p);
        return c;
    }

    static Cyclotomic from_coeffs(unsigned n, std::vector<Rational> coeffs) {
        Cyclotomic c(n);
        detail::Poly p(std::move(coeffs));
        for (auto& x : p) x = canonical(x);
        c.assign_reduced(p);
        return c;
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }
    const Rational& rational_value() const {
        if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
        return coeffs_[0];
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
    // ordering for use as map key (coefficient-wise)
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ != b.order_) return a.order_ < b.order_;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            int c = cmp(a.coeffs_[i], b.coeffs_[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    Cyclotomic operator-() const {
        Cyclotomic r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        check(a, b);
        Cyclotomic r(a);
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        check(a, b);
        Cyclotomic r(a);
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        check(a, b);
        Cyclotomic r(a.order_);
        r.assign_reduced(detail::poly_mul(a.as_poly(), b.as_poly()));
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
        Cyclotomic r(a);
        Rational cs = canonical(s);
        for (auto& c : r.coeffs_) c *= cs;
        return r;
    }
    friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) { return a * s; }

    Cyclotomic inverse() const {
        if (is_zero()) throw division_by_zero();
        auto [g, s] = detail::poly_half_ext_gcd(as_poly(), detail::cyclotomic_polynomial(order_));
        // Phi_N is irreducible, so gcd of a nonzero residue is 1.
        if (g.size() != 1) throw std::logic_error("inverse: gcd not a unit");
        Cyclotomic r(order_);
        detail::Poly inv = s;
        for (auto& c : inv) c /= g[0];
        r.assign_reduced(inv);
        return r;
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
        check(a, b);
        return a * b.inverse();
    }

    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    // "c0 + c1*z + c2*z^2 + ..." with zero terms elided ("0" if zero).
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            Rational c = coeffs_[i];
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            if (i == 0) {
                os << to_string(c);
            } else {
                if (c != 1) os << to_string(c) << "*";
                os << "z";
                if (i > 1) os << "^" << i;
            }
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    explicit Cyclotomic(unsigned n) : order_(n) {
        if (n < 2) throw std::invalid_argument("cyclotomic order must be >= 2");
        coeffs_.assign(detail::euler_phi(n), Rational(0));
    }

    detail::Poly as_poly() const {
        detail::Poly p(coeffs_);
        detail::poly_trim(p);
        return p;
    }

    void assign_reduced(const detail::Poly& p) {
        detail::Poly r = detail::poly_divmod(p, detail::cyclotomic_polynomial(order_)).second;
        std::fill(coeffs_.begin(), coeffs_.end(), Rational(0));
        for (std::size_t i = 0; i < r.size(); ++i) coeffs_[i] = r[i];
    }

    static void check(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ != b.order_) throw order_mismatch(a.order_, b.order_);
    }

    unsigned order_;
    std::vector<Rational> coeffs_;
};

inline Cyclotomic zeta_pow(unsigned n, long k) { return Cyclotomic::zeta_pow(n, k); }

}  // namespace qplane
