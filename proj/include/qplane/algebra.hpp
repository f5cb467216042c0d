#pragma once

// The derivation algebra of the quantum plane at a primitive N-th root of
// unity, presented on its monomial basis: inner terms x^m with residue(m)
// nonzero mod N, and Witt terms x^n d_s with n in N*Z^2, s in {1,2}.

#include "qplane/cyclotomic.hpp"

#include <array>
#include <cassert>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qplane {

struct ExpVec {
    long m1 = 0;
    long m2 = 0;

    friend ExpVec operator+(ExpVec a, ExpVec b) { return {a.m1 + b.m1, a.m2 + b.m2}; }
    friend ExpVec operator-(ExpVec a, ExpVec b) { return {a.m1 - b.m1, a.m2 - b.m2}; }
    friend ExpVec operator-(ExpVec a) { return {-a.m1, -a.m2}; }
    friend auto operator<=>(const ExpVec&, const ExpVec&) = default;

    std::string str() const {
        return "(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
    }
};

inline long mod_floor(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

inline ExpVec residue(ExpVec m, unsigned N) {
    return {mod_floor(m.m1, static_cast<long>(N)), mod_floor(m.m2, static_cast<long>(N))};
}

inline bool in_lattice(ExpVec m, unsigned N) { return residue(m, N) == ExpVec{0, 0}; }

// x^m is central in C_q exactly when q^{m1} = q^{m2} = 1.
inline bool is_central_monomial(unsigned N, ExpVec m) { return in_lattice(m, N); }

// A direction d = a1*d1 + a2*d2 in the Cartan subalgebra.
struct DirectionForm {
    Cyclotomic a1;
    Cyclotomic a2;

    static DirectionForm basis(unsigned N, unsigned s) {
        if (s != 1 && s != 2) throw std::invalid_argument("direction index must be 1 or 2");
        return {s == 1 ? Cyclotomic::one(N) : Cyclotomic::zero(N),
                s == 2 ? Cyclotomic::one(N) : Cyclotomic::zero(N)};
    }
};

inline Cyclotomic pairing(const DirectionForm& d,
                          const std::pair<Cyclotomic, Cyclotomic>& lam) {
    return d.a1 * lam.first + d.a2 * lam.second;
}

inline Cyclotomic pairing(const DirectionForm& d, ExpVec m) {
    return d.a1 * Rational(m.m1) + d.a2 * Rational(m.m2);
}

struct invalid_basis_key : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BasisKey {
    enum class Kind { Inner, Witt };
    Kind kind;
    ExpVec exp;
    unsigned s = 0;  // direction index, Witt keys only

    static BasisKey inner(unsigned N, ExpVec m) {
        if (in_lattice(m, N))
            throw invalid_basis_key("inner key exponent " + m.str() +
                                    " lies in " + std::to_string(N) + "*Z^2");
        return {Kind::Inner, m, 0};
    }
    static BasisKey witt(unsigned N, ExpVec n, unsigned s) {
        if (!in_lattice(n, N))
            throw invalid_basis_key("witt key exponent " + n.str() +
                                    " is not in " + std::to_string(N) + "*Z^2");
        if (s != 1 && s != 2) throw invalid_basis_key("direction index must be 1 or 2");
        return {Kind::Witt, n, s};
    }

    friend auto operator<=>(const BasisKey&, const BasisKey&) = default;

    std::string str() const {
        std::string r = "x[" + std::to_string(exp.m1) + "," + std::to_string(exp.m2) + "]";
        if (kind == Kind::Witt) r += "d" + std::to_string(s);
        return r;
    }
};

class LieElement {
  public:
    explicit LieElement(unsigned N) : order_(N) {}

    static LieElement monomial(unsigned N, const BasisKey& k, const Cyclotomic& c) {
        LieElement e(N);
        e.add(k, c);
        return e;
    }
    static LieElement monomial(unsigned N, const BasisKey& k) {
        return monomial(N, k, Cyclotomic::one(N));
    }
    static LieElement inner(unsigned N, ExpVec m) {
        return monomial(N, BasisKey::inner(N, m));
    }
    static LieElement witt(unsigned N, ExpVec n, unsigned s) {
        return monomial(N, BasisKey::witt(N, n, s));
    }

    unsigned order() const { return order_; }
    const std::map<BasisKey, Cyclotomic>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const BasisKey& k, const Cyclotomic& c) {
        if (c.order() != order_) throw order_mismatch(order_, c.order());
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend LieElement operator+(const LieElement& a, const LieElement& b) {
        if (a.order_ != b.order_) throw order_mismatch(a.order_, b.order_);
        LieElement r(a);
        for (const auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }
    LieElement operator-() const {
        LieElement r(order_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    friend LieElement operator-(const LieElement& a, const LieElement& b) { return a + (-b); }
    friend LieElement operator*(const LieElement& a, const Cyclotomic& s) {
        LieElement r(a.order_);
        for (const auto& [k, c] : a.terms_) r.add(k, c * s);
        return r;
    }
    friend bool operator==(const LieElement& a, const LieElement& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    // true iff the element is a scalar multiple of one basis key
    bool is_homogeneous() const { return terms_.size() <= 1; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (c == Cyclotomic::one(order_)) {
                os << k.str();
            } else if (c.is_rational()) {
                os << to_string(c.rational_value()) << "*" << k.str();
            } else {
                os << "(" << c.str() << ")*" << k.str();
            }
        }
        return os.str();
    }

  private:
    unsigned order_;
    std::map<BasisKey, Cyclotomic> terms_;
};

namespace detail {

// Single-term bracket; the rules below extend bilinearly.
inline LieElement bracket_keys(unsigned N, const BasisKey& a, const BasisKey& b) {
    LieElement r(N);
    using K = BasisKey::Kind;
    if (a.kind == K::Inner && b.kind == K::Inner) {
        const ExpVec m = a.exp, n = b.exp;
        Cyclotomic c = zeta_pow(N, m.m2 * n.m1) - zeta_pow(N, m.m1 * n.m2);
        if (in_lattice(m + n, N)) {
            // n == -m mod N forces q^{m2n1} == q^{m1n2}; anything else is a
            // bug in the reduction, not a case to be dropped quietly.
            assert(c.is_zero());
            return r;
        }
        r.add(BasisKey::inner(N, m + n), c);
    } else if (a.kind == K::Witt && b.kind == K::Inner) {
        const ExpVec k = a.exp, m = b.exp;
        Cyclotomic c = pairing(DirectionForm::basis(N, a.s), m);
        r.add(BasisKey::inner(N, k + m), c);
    } else if (a.kind == K::Inner && b.kind == K::Witt) {
        r = -bracket_keys(N, b, a);
    } else {
        const ExpVec k = a.exp, j = b.exp;
        long js = (a.s == 1) ? j.m1 : j.m2;
        long kt = (b.s == 1) ? k.m1 : k.m2;
        r.add(BasisKey::witt(N, k + j, b.s), Cyclotomic::from_int(N, js));
        r.add(BasisKey::witt(N, k + j, a.s), Cyclotomic::from_int(N, -kt));
    }
    return r;
}

}  // namespace detail

inline LieElement bracket(const LieElement& u, const LieElement& v) {
    if (u.order() != v.order()) throw order_mismatch(u.order(), v.order());
    unsigned N = u.order();
    LieElement r(N);
    for (const auto& [ka, ca] : u.terms())
        for (const auto& [kb, cb] : v.terms())
            r = r + detail::bracket_keys(N, ka, kb) * (ca * cb);
    return r;
}

// All basis keys with both exponent components in [-K, K].
inline std::vector<BasisKey> basis_keys_in_box(unsigned N, long K) {
    std::vector<BasisKey> keys;
    for (long m1 = -K; m1 <= K; ++m1)
        for (long m2 = -K; m2 <= K; ++m2) {
            ExpVec m{m1, m2};
            if (in_lattice(m, N)) {
                keys.push_back(BasisKey::witt(N, m, 1));
                keys.push_back(BasisKey::witt(N, m, 2));
            } else {
                keys.push_back(BasisKey::inner(N, m));
            }
        }
    return keys;
}

struct JacobiReport {
    unsigned long long triples_checked = 0;
    std::vector<std::array<BasisKey, 3>> violations;
};

inline JacobiReport verify_jacobi(unsigned N, long K) {
    if (K < 1) throw std::invalid_argument("window radius must be >= 1");
    JacobiReport rep;
    auto keys = basis_keys_in_box(N, K);
    std::vector<LieElement> elems;
    elems.reserve(keys.size());
    for (const auto& k : keys) elems.push_back(LieElement::monomial(N, k));
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = 0; j < keys.size(); ++j)
            for (std::size_t l = 0; l < keys.size(); ++l) {
                ++rep.triples_checked;
                LieElement jac = bracket(bracket(elems[i], elems[j]), elems[l]) +
                                 bracket(bracket(elems[j], elems[l]), elems[i]) +
                                 bracket(bracket(elems[l], elems[i]), elems[j]);
                if (!jac.is_zero()) rep.violations.push_back({keys[i], keys[j], keys[l]});
            }
    return rep;
}

// For homogeneous u, v of degrees m, n: every term of [u, v] sits in degree m+n.
inline bool grading_check(const LieElement& u, const LieElement& v) {
    if (!u.is_homogeneous() || !v.is_homogeneous())
        throw std::invalid_argument("grading_check requires homogeneous elements");
    if (u.is_zero() || v.is_zero()) return true;
    ExpVec expected = u.terms().begin()->first.exp + v.terms().begin()->first.exp;
    LieElement b = bracket(u, v);
    for (const auto& [k, c] : b.terms())
        if (!(k.exp == expected)) return false;
    return true;
}

}  // namespace qplane
