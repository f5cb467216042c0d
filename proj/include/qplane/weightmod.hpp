#pragma once

// Weight modules of the intermediate series over the derivation algebra:
// the closed-form two-parameter family and generic coefficient-table
// modules, together with window-restricted actions and the verification
// suite (representation axiom, compatibility relation, residue structure,
// reachability, split behaviour).

#include "qplane/algebra.hpp"
#include "qplane/ctable.hpp"

#include <functional>
#include <map>
#include <set>
#include <variant>
#include <vector>

namespace qplane {

// ---------------------------------------------------------------- windows

struct Window {
    ExpVec base;
    long radius;

    Window(ExpVec b, long r) : base(b), radius(r) {
        if (r < 1) throw std::invalid_argument("window radius must be positive");
    }

    bool contains(ExpVec k) const {
        return std::abs(k.m1 - base.m1) <= radius && std::abs(k.m2 - base.m2) <= radius;
    }

    std::vector<ExpVec> indices() const {
        std::vector<ExpVec> out;
        for (long a = base.m1 - radius; a <= base.m1 + radius; ++a)
            for (long b = base.m2 - radius; b <= base.m2 + radius; ++b)
                out.push_back({a, b});
        return out;
    }
};

struct window_escape : std::runtime_error {
    ExpVec index;
    explicit window_escape(ExpVec k)
        : std::runtime_error("module action escapes the window at index " + k.str()),
          index(k) {}
};

struct puncture_error : std::runtime_error {
    ExpVec index;
    explicit puncture_error(ExpVec k)
        : std::runtime_error("module action touches excluded index " + k.str()),
          index(k) {}
};

// ------------------------------------------------------------------ specs

using WeightPair = std::pair<Cyclotomic, Cyclotomic>;

inline WeightPair weight_at(const WeightPair& alpha, ExpVec k) {
    unsigned n = alpha.first.order();
    return {alpha.first + Cyclotomic::from_int(n, k.m1),
            alpha.second + Cyclotomic::from_int(n, k.m2)};
}

inline bool weight_is_zero(const WeightPair& w) {
    return w.first.is_zero() && w.second.is_zero();
}

// The closed-form family: x^m v_k = (q^{m2 k1} - a q^{m1 k2}) v_{m+k},
// (x^n d) v_k = <d, alpha + k + b n> v_{n+k}. Total: defined at every index.
struct ClosedFormSpec {
    unsigned order;  // N
    int a;           // 0 or 1
    WeightPair alpha;
    Cyclotomic b;

    ClosedFormSpec(unsigned N, int a_, WeightPair alpha_, Cyclotomic b_)
        : order(N), a(a_), alpha(std::move(alpha_)), b(std::move(b_)) {
        if (a != 0 && a != 1)
            throw std::invalid_argument("closed-form parameter a must be 0 or 1");
    }

    Cyclotomic inner_coeff(ExpVec m, ExpVec k) const {
        Cyclotomic c = zeta_pow(order, m.m2 * k.m1);
        if (a == 1) c -= zeta_pow(order, m.m1 * k.m2);
        return c;
    }
    Cyclotomic witt_coeff(unsigned s, ExpVec n, ExpVec k) const {
        WeightPair w = weight_at(alpha, k);
        w.first += b * Cyclotomic::from_int(order, n.m1);
        w.second += b * Cyclotomic::from_int(order, n.m2);
        return pairing(DirectionForm::basis(order, s), w);
    }
};

// Coefficient-table module: inner actions read the c-table, Witt actions use
// a per-residue-class b value; indices with alpha + k = 0 are excluded.
struct GenericSpec {
    unsigned order;
    WeightPair alpha;
    std::map<ExpVec, Cyclotomic> b_map;  // keyed by residue class
    CTable c_table;
    std::set<ExpVec> punctures;

    GenericSpec(unsigned N, WeightPair alpha_, std::map<ExpVec, Cyclotomic> b_map_,
                CTable c_table_, std::set<ExpVec> punctures_ = {})
        : order(N),
          alpha(std::move(alpha_)),
          b_map(std::move(b_map_)),
          c_table(std::move(c_table_)),
          punctures(std::move(punctures_)) {
        if (c_table.order() != N) throw order_mismatch(N, c_table.order());
    }

    bool is_puncture(ExpVec k) const { return punctures.count(k) > 0; }

    const Cyclotomic& b_at(ExpVec k) const {
        auto it = b_map.find(residue(k, order));
        if (it == b_map.end())
            throw std::invalid_argument("no b value for residue class " +
                                        residue(k, order).str());
        return it->second;
    }

    Cyclotomic witt_coeff(unsigned s, ExpVec n, ExpVec k) const {
        WeightPair w = weight_at(alpha, k);
        const Cyclotomic& b = b_at(k);
        w.first += b * Cyclotomic::from_int(order, n.m1);
        w.second += b * Cyclotomic::from_int(order, n.m2);
        return pairing(DirectionForm::basis(order, s), w);
    }
};

using ModuleSpec = std::variant<ClosedFormSpec, GenericSpec>;

inline unsigned spec_order(const ModuleSpec& spec) {
    return std::visit([](const auto& s) { return s.order; }, spec);
}

// ---------------------------------------------------------------- vectors

class ModuleVector {
  public:
    explicit ModuleVector(unsigned N) : order_(N) {}

    static ModuleVector basis(unsigned N, ExpVec k) {
        ModuleVector v(N);
        v.add(k, Cyclotomic::one(N));
        return v;
    }

    unsigned order() const { return order_; }
    const std::map<ExpVec, Cyclotomic>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(ExpVec k, const Cyclotomic& c) {
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

    friend ModuleVector operator+(const ModuleVector& a, const ModuleVector& b) {
        if (a.order_ != b.order_) throw order_mismatch(a.order_, b.order_);
        ModuleVector r(a);
        for (const auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }
    ModuleVector operator-() const {
        ModuleVector r(order_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    friend ModuleVector operator-(const ModuleVector& a, const ModuleVector& b) {
        return a + (-b);
    }
    friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

  private:
    unsigned order_;
    std::map<ExpVec, Cyclotomic> terms_;
};

// ----------------------------------------------------------------- action

namespace detail {

// Coefficient and target index of one basis key applied to one v_k.
inline std::pair<Cyclotomic, ExpVec> act_key(const ModuleSpec& spec,
                                             const BasisKey& g, ExpVec k) {
    if (const auto* cf = std::get_if<ClosedFormSpec>(&spec)) {
        if (g.kind == BasisKey::Kind::Inner)
            return {cf->inner_coeff(g.exp, k), g.exp + k};
        return {cf->witt_coeff(g.s, g.exp, k), g.exp + k};
    }
    const auto& gen = std::get<GenericSpec>(spec);
    if (gen.is_puncture(k)) throw puncture_error(k);
    Cyclotomic c = (g.kind == BasisKey::Kind::Inner)
                       ? gen.c_table.get(g.exp, k)
                       : gen.witt_coeff(g.s, g.exp, k);
    ExpVec target = g.exp + k;
    if (!c.is_zero() && gen.is_puncture(target)) throw puncture_error(target);
    return {c, target};
}

}  // namespace detail

inline ModuleVector act(const ModuleSpec& spec, const LieElement& g,
                        const ModuleVector& v, const Window& window) {
    unsigned N = spec_order(spec);
    if (g.order() != N || v.order() != N)
        throw order_mismatch(N, g.order() != N ? g.order() : v.order());
    for (const auto& [k, c] : v.terms())
        if (!window.contains(k)) throw window_escape(k);

    ModuleVector out(N);
    for (const auto& [key, gc] : g.terms()) {
        for (const auto& [k, vc] : v.terms()) {
            auto [c, target] = detail::act_key(spec, key, k);
            Cyclotomic full = gc * vc * c;
            if (full.is_zero()) continue;
            if (!window.contains(target)) throw window_escape(target);
            out.add(target, full);
        }
    }
    return out;
}

// ------------------------------------------------------ axiom verification

struct AxiomViolation {
    BasisKey g;
    BasisKey h;
    ExpVec k;
};

struct AxiomReport {
    unsigned long long combos_checked = 0;
    unsigned long long combos_skipped = 0;  // escaped the window or hit a puncture
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks act([g,h], v_k) = act(g, act(h, v_k)) - act(h, act(g, v_k)) for all
// unordered generator pairs (exponents bounded by N) and all window indices.
// Combinations whose intermediates leave the window or touch a puncture are
// skipped and counted, never silently truncated.
inline AxiomReport verify_module_axiom(const ModuleSpec& spec, unsigned N,
                                       const Window& window) {
    if (window.radius < 2)
        throw std::invalid_argument("axiom verification needs window radius >= 2");
    AxiomReport rep;
    auto keys = basis_keys_in_box(N, static_cast<long>(N));
    auto idx = window.indices();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            LieElement gi = LieElement::monomial(N, keys[i]);
            LieElement gj = LieElement::monomial(N, keys[j]);
            LieElement gij = bracket(gi, gj);
            for (ExpVec k : idx) {
                ++rep.combos_checked;
                try {
                    ModuleVector vk = ModuleVector::basis(N, k);
                    ModuleVector lhs = act(spec, gij, vk, window);
                    ModuleVector rhs = act(spec, gi, act(spec, gj, vk, window), window) -
                                       act(spec, gj, act(spec, gi, vk, window), window);
                    if (!(lhs == rhs)) rep.violations.push_back({keys[i], keys[j], k});
                } catch (const window_escape&) {
                    ++rep.combos_skipped;
                } catch (const puncture_error&) {
                    ++rep.combos_skipped;
                }
            }
        }
    }
    return rep;
}

// ------------------------------------------------- compatibility relation

struct CompatSample {
    DirectionForm d;
    ExpVec k;     // in N*Z^2
    ExpVec m;     // not in N*Z^2
    ExpVec base;  // the index i+n the relation is anchored at
};

struct invalid_sample : std::runtime_error {
    std::string weight;
    explicit invalid_sample(const std::string& w)
        : std::runtime_error("sample violates the nonvanishing convention at weight " + w),
          weight(w) {}
};

struct CompatReport {
    std::size_t samples_checked = 0;
    std::vector<std::size_t> failures;  // indices into the sample list
    bool ok() const { return failures.empty(); }
};

// The derived relation between c-values and b-values:
//   <d,m> c_{k+m,base} = <d, alpha+base+m + b_{base+m} k> c_{m,base}
//                        - c_{m,base+k} <d, alpha+base + b_base k>.
inline CompatReport check_2_7(const GenericSpec& spec, unsigned N,
                              const std::vector<CompatSample>& samples) {
    CompatReport rep;
    for (std::size_t si = 0; si < samples.size(); ++si) {
        const auto& s = samples[si];
        if (!in_lattice(s.k, N))
            throw std::invalid_argument("sample k must lie in N*Z^2");
        if (in_lattice(s.m, N))
            throw std::invalid_argument("sample m must lie outside N*Z^2");
        for (ExpVec idx : {s.base, s.base + s.m, s.base + s.k, s.base + s.m + s.k}) {
            WeightPair w = weight_at(spec.alpha, idx);
            if (weight_is_zero(w))
                throw invalid_sample("(" + w.first.str() + "," + w.second.str() +
                                     ") at index " + idx.str());
        }
        auto weight_arg = [&](ExpVec at, const Cyclotomic& b) {
            WeightPair w = weight_at(spec.alpha, at);
            w.first += b * Cyclotomic::from_int(N, s.k.m1);
            w.second += b * Cyclotomic::from_int(N, s.k.m2);
            return w;
        };
        Cyclotomic lhs = pairing(s.d, s.m) * spec.c_table.get(s.k + s.m, s.base);
        Cyclotomic rhs =
            pairing(s.d, weight_arg(s.base + s.m, spec.b_at(s.base + s.m))) *
                spec.c_table.get(s.m, s.base) -
            spec.c_table.get(s.m, s.base + s.k) *
                pairing(s.d, weight_arg(s.base, spec.b_at(s.base)));
        ++rep.samples_checked;
        if (lhs != rhs) rep.failures.push_back(si);
    }
    return rep;
}

// --------------------------------------------------------- residue split

inline std::map<ExpVec, std::vector<ExpVec>> residue_split(const Window& window,
                                                           unsigned N) {
    std::map<ExpVec, std::vector<ExpVec>> classes;
    for (ExpVec k : window.indices()) classes[residue(k, N)].push_back(k);
    return classes;
}

// ------------------------------------------------------------ group by b

struct BGroupReport {
    // residue classes grouped by their b value
    std::map<Cyclotomic, std::vector<ExpVec>> groups;
    // (m, i) pairs with c_{m,i} != 0 but b_i != b_{i+m}
    std::vector<std::pair<ExpVec, ExpVec>> closure_violations;
    bool ok() const { return closure_violations.empty(); }
};

inline BGroupReport group_by_b(const GenericSpec& spec) {
    BGroupReport rep;
    for (const auto& [i, b] : spec.b_map) rep.groups[b].push_back(i);
    for (const auto& [key, c] : spec.c_table.support()) {
        const auto& [m, i] = key;
        if (!(spec.b_at(i) == spec.b_at(i + m)))
            rep.closure_violations.push_back({m, i});
    }
    return rep;
}

// ----------------------------------------------------------- reachability

struct ReachabilityReport {
    std::vector<ExpVec> nodes;
    std::map<ExpVec, std::set<ExpVec>> edges;
    std::vector<std::vector<ExpVec>> components;     // strongly connected
    std::vector<std::size_t> sink_components;        // no edges leaving them
};

// Directed graph on window indices: k -> k' when some generator basis key
// (exponents bounded by N) sends v_k to a nonzero multiple of v_{k'} inside
// the window. An optional filter restricts the node set (e.g. to one
// residue class, or to a submodule support).
inline ReachabilityReport reachability(
    const ModuleSpec& spec, unsigned N, const Window& window,
    const std::function<bool(ExpVec)>& filter = nullptr) {
    ReachabilityReport rep;
    const GenericSpec* gen = std::get_if<GenericSpec>(&spec);
    for (ExpVec k : window.indices()) {
        if (filter && !filter(k)) continue;
        if (gen && gen->is_puncture(k)) continue;
        rep.nodes.push_back(k);
    }
    std::set<ExpVec> node_set(rep.nodes.begin(), rep.nodes.end());
    auto keys = basis_keys_in_box(N, static_cast<long>(N));
    for (ExpVec k : rep.nodes) {
        rep.edges[k];
        for (const auto& g : keys) {
            try {
                auto [c, target] = detail::act_key(spec, g, k);
                if (c.is_zero() || !node_set.count(target)) continue;
                if (!(target == k)) rep.edges[k].insert(target);
            } catch (const puncture_error&) {
                // actions into an excluded index contribute no edge
            }
        }
    }

    // Tarjan's strongly-connected components, iterative.
    std::map<ExpVec, int> index, low;
    std::map<ExpVec, bool> on_stack;
    std::vector<ExpVec> stack;
    int counter = 0;
    struct Frame {
        ExpVec v;
        std::set<ExpVec>::const_iterator it;
    };
    for (ExpVec start : rep.nodes) {
        if (index.count(start)) continue;
        std::vector<Frame> frames;
        auto push_node = [&](ExpVec v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            frames.push_back({v, rep.edges.at(v).begin()});
        };
        push_node(start);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.it != rep.edges.at(f.v).end()) {
                ExpVec w = *f.it++;
                if (!index.count(w)) {
                    push_node(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<ExpVec> comp;
                    ExpVec w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (!(w == f.v));
                    rep.components.push_back(std::move(comp));
                }
                ExpVec done = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[done]);
            }
        }
    }

    std::map<ExpVec, std::size_t> comp_of;
    for (std::size_t c = 0; c < rep.components.size(); ++c)
        for (ExpVec v : rep.components[c]) comp_of[v] = c;
    for (std::size_t c = 0; c < rep.components.size(); ++c) {
        bool sink = true;
        for (ExpVec v : rep.components[c])
            for (ExpVec w : rep.edges.at(v))
                if (comp_of.at(w) != c) sink = false;
        if (sink) rep.sink_components.push_back(c);
    }
    return rep;
}

// -------------------------------------------------------------- A_1 split

struct SplitReport {
    std::vector<ExpVec> primary_support;    // indices outside N*Z^2
    std::vector<ExpVec> secondary_support;  // indices in N*Z^2
    // (m, k) pairs where an inner action crosses between the two supports
    // with a nonzero coefficient, or fails to annihilate the lattice part
    std::vector<std::pair<ExpVec, ExpVec>> violations;
    bool ok() const { return violations.empty(); }
};

// For a = 1 the module splits along residue: inner monomials annihilate the
// lattice-indexed part and never map either part across to the other.
inline SplitReport split_A1(const WeightPair& alpha, const Cyclotomic& b, unsigned N,
                            const Window& window) {
    ClosedFormSpec spec(N, 1, alpha, b);
    SplitReport rep;
    for (ExpVec k : window.indices())
        (in_lattice(k, N) ? rep.secondary_support : rep.primary_support).push_back(k);

    for (const auto& g : basis_keys_in_box(N, static_cast<long>(N))) {
        if (g.kind != BasisKey::Kind::Inner) continue;  // Witt keys preserve residue
        for (ExpVec k : window.indices()) {
            Cyclotomic c = spec.inner_coeff(g.exp, k);
            if (c.is_zero()) continue;
            if (in_lattice(k, N) || in_lattice(g.exp + k, N))
                rep.violations.push_back({g.exp, k});
        }
    }
    return rep;
}

// ------------------------------------------------------ puncture extension

struct PunctureExtensionReport {
    ExpVec puncture;           // -alpha
    Cyclotomic defining_coeff; // coefficient of x^{(1,0)} v_{-alpha-(1,0)}
    bool rule_defines;         // the coefficient is nonzero
    bool agrees_with_direct;   // image equals defining_coeff * v_{-alpha}
    AxiomReport axiom;         // re-run on a window containing -alpha
};

// When alpha is an integer point, the weight -alpha occurs in the lattice;
// the extension rule materializes v_{-alpha} as x^{(1,0)} v_{-alpha-(1,0)}.
// The closed form is total, so the result must match it wherever the rule
// defines anything at all.
inline PunctureExtensionReport define_puncture_vector(const ClosedFormSpec& spec) {
    unsigned N = spec.order;
    if (!spec.alpha.first.is_rational() || !spec.alpha.second.is_rational() ||
        spec.alpha.first.rational_value().get_den() != 1 ||
        spec.alpha.second.rational_value().get_den() != 1)
        throw std::invalid_argument("puncture extension needs integer alpha");
    ExpVec neg_alpha{-spec.alpha.first.rational_value().get_num().get_si(),
                     -spec.alpha.second.rational_value().get_num().get_si()};

    PunctureExtensionReport rep{neg_alpha, Cyclotomic::zero(N), false, false, {}};
    ExpVec below = neg_alpha - ExpVec{1, 0};
    rep.defining_coeff = spec.inner_coeff({1, 0}, below);
    rep.rule_defines = !rep.defining_coeff.is_zero();

    Window w(neg_alpha, 2 * static_cast<long>(N));
    ModuleSpec ms = spec;
    ModuleVector image = act(ms, LieElement::inner(N, {1, 0}),
                             ModuleVector::basis(N, below), w);
    ModuleVector direct(N);
    direct.add(neg_alpha, rep.defining_coeff);
    rep.agrees_with_direct = (image == direct);
    rep.axiom = verify_module_axiom(ms, N, w);
    return rep;
}

}  // namespace qplane
