#pragma once

// Text parsing for scalars and algebra elements, and JSON rendering for the
// report types. Scalar syntax: rationals like "-3/2" and polynomials in the
// root symbol z like "z+1", "1/2 + 5*z^2". Element syntax: sums of terms
// like "x[1,0]", "x[2,0]d1", "2*x[1,1]", "(1/2 + z)*x[0,1]".

#include "qplane/algebra.hpp"
#include "qplane/solver.hpp"
#include "qplane/weightmod.hpp"

#include <json.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace qplane {

using json = nlohmann::ordered_json;

namespace detail {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    void expect(char c) {
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "'", pos);
    }
    long integer() {
        skip_ws();
        std::size_t start = pos;
        bool neg = accept('-');
        if (!neg) accept('+');
        skip_ws();
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw parse_error("expected integer", start);
        long v = std::stol(std::string(s.substr(digits, pos - digits)));
        return neg ? -v : v;
    }
    Rational rational() {
        skip_ws();
        std::size_t start = pos;
        BigInt num(integer());
        if (accept('/')) {
            skip_ws();
            std::size_t dpos = pos;
            BigInt den(integer());
            if (den == 0) throw parse_error("zero denominator", dpos);
            if (den < 0) throw parse_error("negative denominator", dpos);
            return canonical(Rational(num, den));
        }
        (void)start;
        return Rational(num);
    }
};

// one scalar term: rational, z, z^k, rational*z^k, or any of these negated
inline Cyclotomic scalar_term(unsigned N, Cursor& cur) {
    bool neg = false;
    while (true) {
        if (cur.accept('-'))
            neg = !neg;
        else if (!cur.accept('+'))
            break;
    }
    Cyclotomic value = Cyclotomic::one(N);
    bool saw_coeff = false;
    if (cur.peek() != 'z') {
        value = Cyclotomic::from_rational(N, cur.rational());
        saw_coeff = true;
        if (!cur.accept('*')) {
            return neg ? -value : value;
        }
    }
    if (cur.peek() != 'z') {
        if (saw_coeff) throw parse_error("expected 'z' after '*'", cur.pos);
        throw parse_error("expected scalar term", cur.pos);
    }
    cur.expect('z');
    long k = 1;
    if (cur.accept('^')) k = cur.integer();
    value = value * zeta_pow(N, k);
    return neg ? -value : value;
}

inline Cyclotomic scalar_sum(unsigned N, Cursor& cur, char stop = '\0') {
    Cyclotomic total = scalar_term(N, cur);
    while (!cur.done() && cur.peek() != stop) {
        char c = cur.peek();
        if (c != '+' && c != '-') throw parse_error("expected '+' or '-'", cur.pos);
        total += scalar_term(N, cur);  // the sign is consumed by the term
    }
    return total;
}

inline BasisKey basis_key(unsigned N, Cursor& cur) {
    std::size_t start = cur.pos;
    cur.expect('x');
    cur.expect('[');
    long m1 = cur.integer();
    cur.expect(',');
    long m2 = cur.integer();
    cur.expect(']');
    if (cur.peek() == 'd') {
        ++cur.pos;
        long s = cur.integer();
        if (s != 1 && s != 2) throw parse_error("direction index must be 1 or 2", cur.pos);
        if (!in_lattice({m1, m2}, N))
            throw parse_error("vector-field exponent must be a multiple of the order",
                              start);
        return BasisKey::witt(N, {m1, m2}, static_cast<unsigned>(s));
    }
    if (in_lattice({m1, m2}, N))
        throw parse_error("monomial exponent reduces to the lattice; use a d1/d2 key",
                          start);
    return BasisKey::inner(N, {m1, m2});
}

}  // namespace detail

inline Cyclotomic parse_scalar(unsigned N, std::string_view text) {
    detail::Cursor cur{text};
    Cyclotomic v = detail::scalar_sum(N, cur);
    if (!cur.done()) throw parse_error("trailing characters", cur.pos);
    return v;
}

inline LieElement parse_element(unsigned N, std::string_view text) {
    detail::Cursor cur{text};
    LieElement total(N);
    bool first = true;
    while (first || !cur.done()) {
        bool neg = false;
        if (!first) {
            char c = cur.peek();
            if (c == '-')
                neg = true;
            else if (c != '+')
                throw parse_error("expected '+' or '-'", cur.pos);
            ++cur.pos;
        }
        first = false;
        Cyclotomic coeff = Cyclotomic::one(N);
        if (cur.accept('(')) {
            coeff = detail::scalar_sum(N, cur, ')');
            cur.expect(')');
            cur.expect('*');
        } else if (cur.peek() != 'x') {
            coeff = Cyclotomic::from_rational(N, cur.rational());
            cur.expect('*');
        }
        if (neg) coeff = -coeff;
        total.add(detail::basis_key(N, cur), coeff);
    }
    return total;
}

// ------------------------------------------------------------------ JSON

inline std::string scalar_str(const Cyclotomic& c) {
    return c.is_rational() ? to_string(c.rational_value()) : c.str();
}

inline json to_json(const Cyclotomic& c) {
    json coeffs = json::array();
    for (const auto& r : c.coeffs()) coeffs.push_back(to_string(r));
    return json{{"order", c.order()}, {"coeffs", coeffs}};
}

inline json to_json(const LieElement& e) {
    json out = json::array();
    for (const auto& [k, c] : e.terms())
        out.push_back(json{{"key", k.str()}, {"coeff", scalar_str(c)}});
    return out;
}

inline std::string table_key_str(const CTable::Key& key) {
    return key.first.str() + "," + key.second.str();
}

inline json to_json(const CTable& c) {
    json out = json::object();
    for (const auto& [key, v] : c.support()) out[table_key_str(key)] = scalar_str(v);
    return out;
}

inline json to_json(const ModuleSpec& spec) {
    if (const auto* cf = std::get_if<ClosedFormSpec>(&spec)) {
        return json{{"kind", "closed"},
                    {"a", cf->a},
                    {"alpha", {scalar_str(cf->alpha.first), scalar_str(cf->alpha.second)}},
                    {"b", scalar_str(cf->b)}};
    }
    const auto& g = std::get<GenericSpec>(spec);
    json b_map = json::object();
    for (const auto& [i, b] : g.b_map) b_map[i.str()] = scalar_str(b);
    json punctures = json::array();
    for (const auto& p : g.punctures) punctures.push_back(p.str());
    return json{{"kind", "generic"},
                {"alpha", {scalar_str(g.alpha.first), scalar_str(g.alpha.second)}},
                {"b_map", b_map},
                {"c_table", to_json(g.c_table)},
                {"punctures", punctures}};
}

namespace detail {

inline ExpVec parse_expvec(std::string_view text) {
    Cursor cur{text};
    cur.expect('(');
    long a = cur.integer();
    cur.expect(',');
    long b = cur.integer();
    cur.expect(')');
    return {a, b};
}

}  // namespace detail

inline ModuleSpec module_spec_from_json(unsigned N, const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    auto scalar_at = [&](const json& v) {
        return parse_scalar(N, v.get<std::string>());
    };
    WeightPair alpha{scalar_at(j.at("alpha").at(0)), scalar_at(j.at("alpha").at(1))};
    if (kind == "closed")
        return ClosedFormSpec(N, j.at("a").get<int>(), alpha, scalar_at(j.at("b")));
    if (kind != "generic") throw parse_error("unknown module kind '" + kind + "'", 0);
    std::map<ExpVec, Cyclotomic> b_map;
    for (const auto& [k, v] : j.at("b_map").items())
        b_map.emplace(detail::parse_expvec(k), scalar_at(v));
    CTable table(N);
    for (const auto& [k, v] : j.at("c_table").items()) {
        detail::Cursor cur{k};
        cur.expect('(');
        long a = cur.integer();
        cur.expect(',');
        long b = cur.integer();
        cur.expect(')');
        cur.expect(',');
        cur.expect('(');
        long c = cur.integer();
        cur.expect(',');
        long d = cur.integer();
        cur.expect(')');
        table.set({a, b}, {c, d}, scalar_at(v));
    }
    std::set<ExpVec> punctures;
    if (j.contains("punctures"))
        for (const auto& p : j.at("punctures"))
            punctures.insert(detail::parse_expvec(p.get<std::string>()));
    return GenericSpec(N, alpha, std::move(b_map), std::move(table),
                       std::move(punctures));
}

inline json to_json(const AxiomReport& rep) {
    json violations = json::array();
    for (const auto& v : rep.violations)
        violations.push_back(json{{"g", v.g.str()}, {"h", v.h.str()}, {"index", v.k.str()}});
    return json{{"combos_checked", rep.combos_checked},
                {"combos_skipped", rep.combos_skipped},
                {"violations", violations}};
}

inline json to_json(const JacobiReport& rep) {
    json violations = json::array();
    for (const auto& t : rep.violations)
        violations.push_back(json{t[0].str(), t[1].str(), t[2].str()});
    return json{{"triples_checked", rep.triples_checked}, {"violations", violations}};
}

inline json to_json(const CompatReport& rep) {
    return json{{"samples_checked", rep.samples_checked},
                {"violations", rep.failures}};
}

inline json to_json(const Case3Report& rep) {
    json samples = json::array();
    for (const auto& s : rep.samples)
        samples.push_back(json{{"coefficient", to_string(s.coefficient)},
                               {"residual", to_string(s.residual)},
                               {"forces_zero", s.forces_zero}});
    return json{{"dichotomy_ok", rep.dichotomy_ok},
                {"residual_identically_zero", rep.residual_identically_zero},
                {"samples", samples}};
}

inline json to_json(const ClassificationReport& rep, unsigned N, bool oracle_checked) {
    json orbits = json::array();
    for (const auto& co : rep.orbits) {
        json zero = json::array();
        for (const auto& key : co.orbit.zero_pattern)
            zero.push_back(table_key_str(key));
        json free = json::array();
        for (const auto& key : co.orbit.free_parameters)
            free.push_back(table_key_str(key));
        json entry{{"label", co.orbit.label},
                   {"zero_pattern", zero},
                   {"representative", to_json(co.orbit.representative)},
                   {"free_parameters", free}};
        if (co.orbit.label == "family-2.24") entry["offset"] = co.offset.str();
        entry["decomposable"] = co.decomposable;
        orbits.push_back(std::move(entry));
    }
    return json{{"N", N}, {"orbits", orbits}, {"oracle_checked", oracle_checked}};
}

}  // namespace qplane
