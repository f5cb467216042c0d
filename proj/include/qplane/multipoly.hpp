#pragma once

// Sparse multivariate polynomials over Q(zeta_N), graded-lex term order.
// Used for symbolic identity checks and for the solver's elimination engine.

#include "qplane/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qplane {

namespace detail {
struct GrLess {
    bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
        unsigned da = 0, db = 0;
        for (auto x : a) da += x;
        for (auto x : b) db += x;
        if (da != db) return da < db;
        return a < b;  // lex within a degree block
    }
};
}  // namespace detail

class MultiPoly {
  public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Cyclotomic, detail::GrLess>;

    MultiPoly(unsigned order, std::vector<std::string> variables)
        : order_(order), vars_(std::move(variables)) {}

    static MultiPoly constant(unsigned order, std::vector<std::string> vars,
                              const Cyclotomic& c) {
        MultiPoly p(order, std::move(vars));
        p.add_term(Exponents(p.vars_.size(), 0), c);
        return p;
    }
    static MultiPoly variable(unsigned order, std::vector<std::string> vars,
                              const std::string& name) {
        MultiPoly p(order, std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e[p.var_index(name)] = 1;
        p.add_term(e, Cyclotomic::one(order));
        return p;
    }

    unsigned order() const { return order_; }
    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
    }
    Cyclotomic constant_value() const {
        if (terms_.empty()) return Cyclotomic::zero(order_);
        return terms_.begin()->second;
    }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw std::invalid_argument("unknown variable '" + name + "'");
    }

    std::set<std::size_t> used_variables() const {
        std::set<std::size_t> s;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) s.insert(i);
        return s;
    }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    void add_term(const Exponents& e, const Cyclotomic& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(order_, vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a);
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.order_, a.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const Cyclotomic& s) {
        MultiPoly r(a.order_, a.vars_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    // Coefficient polynomials of powers of one variable: result[d] is the
    // coefficient of var^d (with that variable's exponent zeroed out).
    std::vector<MultiPoly> coefficients_in(std::size_t var) const {
        std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(order_, vars_));
        for (const auto& [e, c] : terms_) {
            Exponents e2(e);
            unsigned d = e2[var];
            e2[var] = 0;
            out[d].add_term(e2, c);
        }
        return out;
    }

    // Substitute var := num/den and clear denominators: returns
    // sum_d coeff_d * num^d * den^(D-d) where D = degree_in(var).
    MultiPoly substitute_fraction(std::size_t var, const MultiPoly& num,
                                  const MultiPoly& den) const {
        auto cs = coefficients_in(var);
        MultiPoly r(order_, vars_);
        for (std::size_t d = 0; d < cs.size(); ++d) {
            MultiPoly t = cs[d];
            for (std::size_t k = 0; k < d; ++k) t = t * num;
            for (std::size_t k = d; k + 1 < cs.size(); ++k) t = t * den;
            r = r + t;
        }
        return r;
    }

    MultiPoly substitute(std::size_t var, const Cyclotomic& value) const {
        MultiPoly r(order_, vars_);
        for (const auto& [e, c] : terms_) {
            Cyclotomic coeff = c;
            for (unsigned k = 0; k < e[var]; ++k) coeff *= value;
            Exponents e2(e);
            e2[var] = 0;
            r.add_term(e2, coeff);
        }
        return r;
    }

    Cyclotomic evaluate(const std::map<std::string, Cyclotomic>& point) const {
        Cyclotomic r = Cyclotomic::zero(order_);
        for (const auto& [e, c] : terms_) {
            Cyclotomic t = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                const Cyclotomic& v = point.at(vars_[i]);
                for (unsigned k = 0; k < e[i]; ++k) t *= v;
            }
            r += t;
        }
        return r;
    }

  private:
    void check(const MultiPoly& b) const {
        if (order_ != b.order_) throw order_mismatch(order_, b.order_);
        if (vars_ != b.vars_)
            throw std::invalid_argument("multipoly variable sets differ");
    }

    unsigned order_;
    std::vector<std::string> vars_;
    TermMap terms_;
};

// True iff p and q expand to the same canonical form. The variable lists may
// be in different orders; they are aligned by name first.
inline bool poly_expand_equal(const MultiPoly& p, const MultiPoly& q) {
    if (p.order() != q.order()) return false;
    std::set<std::string> pv(p.variables().begin(), p.variables().end());
    std::set<std::string> qv(q.variables().begin(), q.variables().end());
    if (pv != qv) return false;
    if (p.variables() == q.variables()) return (p - q).is_zero();
    // realign q's exponents to p's variable order
    MultiPoly q2(q.order(), p.variables());
    std::vector<std::size_t> perm(q.variables().size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = p.var_index(q.variables()[i]);
    for (const auto& [e, c] : q.terms()) {
        MultiPoly::Exponents e2(e.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e2[perm[i]] = e[i];
        q2.add_term(e2, c);
    }
    return (p - q2).is_zero();
}

}  // namespace qplane
