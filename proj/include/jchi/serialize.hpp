#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "jchi/arith.hpp"
#include "jchi/bounds.hpp"
#include "jchi/diffalg.hpp"
#include "jchi/jet.hpp"
#include "jchi/modular.hpp"
#include "jchi/qseries.hpp"

namespace jchi {

using Json = nlohmann::json;

// --- q-series -------------------------------------------------------------

inline Json to_json(const QSeries& f) {
    Json terms = Json::array();
    for (const auto& [k, c] : f.terms())
        terms.push_back(Json::array({k, c.to_string()}));
    return Json{{"denom", f.denom()}, {"trunc", f.trunc()}, {"terms", terms}};
}

inline QSeries series_from_json(const Json& j) {
    try {
        QSeries f(j.at("denom").get<long>(), j.at("trunc").get<long>());
        for (const auto& t : j.at("terms"))
            f.set(t.at(0).get<long>(), Rational::parse(t.at(1).get<std::string>()));
        return f;
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed series JSON: ") + e.what());
    }
}

inline std::string exponent_text(const Rational& e) {
    if (e == Rational(1))
        return "q";
    if (e.is_integer())
        return "q^" + e.to_string();
    return "q^(" + e.to_string() + ")";
}

// Ascending exponents, e.g. "q^-1 + 744 + 196884*q".
inline std::string to_text(const QSeries& f) {
    if (f.is_zero())
        return "0 (valid to " + exponent_text(f.trunc_exponent()) + ")";
    std::string out;
    for (const auto& [k, c] : f.terms()) {
        Rational e(k, f.denom());
        bool neg = c.sign() < 0;
        Rational a = c.abs();
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (e.is_zero())
            out += a.to_string();
        else if (a == Rational(1))
            out += exponent_text(e);
        else
            out += a.to_string() + "*" + exponent_text(e);
    }
    return out;
}

inline Json to_json(const SeriesReport& r) {
    return Json{{"checked_window", Json::array({r.window_lo.to_string(), r.window_hi.to_string()})},
                {"first_nonzero_exponent",
                 r.first_nonzero_exponent ? Json(r.first_nonzero_exponent->to_string()) : Json(nullptr)},
                {"max_abs_numerator", r.max_abs_numerator.get_str()},
                {"vanishes", r.vanishes()}};
}

// --- jet polynomials --------------------------------------------------------

inline std::string variable_text(const JetVariable& v, const std::string& parameter_name = "a") {
    if (v.is_parameter())
        return parameter_name;
    std::string name = v.coord == 1 ? "x" : "x" + std::to_string(v.coord);
    return name + std::string(static_cast<std::size_t>(v.order), '\'');
}

// Terms in descending lexicographic order.
inline std::string to_text(const JetPolynomial& p, const std::string& parameter_name = "a") {
    if (p.is_zero())
        return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c.sign() < 0;
        Rational a = c.abs();
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono;
        for (const auto& [v, e] : m) {
            if (!mono.empty())
                mono += "*";
            mono += variable_text(v, parameter_name) + (e > 1 ? "^" + std::to_string(e) : "");
        }
        if (mono.empty())
            out += a.to_string();
        else if (a == Rational(1))
            out += mono;
        else
            out += a.to_string() + "*" + mono;
    }
    return out;
}

inline Json to_json(const JetPolynomial& p) {
    auto vs = p.variables();
    std::vector<JetVariable> vars(vs.begin(), vs.end());
    Json jvars = Json::array();
    for (const auto& v : vars)
        jvars.push_back(Json::array({v.coord, v.order}));
    Json terms = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Json exps = Json::array();
        for (const auto& v : vars)
            exps.push_back(monomial_degree_in(it->first, v));
        terms.push_back(Json::array({exps, it->second.to_string()}));
    }
    return Json{{"vars", jvars}, {"terms", terms}};
}

inline JetPolynomial jet_polynomial_from_json(const Json& j) {
    try {
        std::vector<JetVariable> vars;
        for (const auto& v : j.at("vars"))
            vars.push_back({v.at(0).get<int>(), v.at(1).get<int>()});
        JetPolynomial p;
        for (const auto& t : j.at("terms")) {
            const auto& exps = t.at(0);
            if (exps.size() != vars.size())
                throw UsageError("exponent vector length differs from variable list");
            Monomial m;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                unsigned e = exps.at(i).get<unsigned>();
                if (e > 0)
                    m = monomial_mul(m, Monomial{{vars[i], e}});
            }
            p.add_term(m, Rational::parse(t.at(1).get<std::string>()));
        }
        return p;
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed polynomial JSON: ") + e.what());
    }
}

// Re-parseable by the expression language.
inline std::string to_text(const DiffExpression& e) {
    if (e.den() == JetPolynomial(1))
        return to_text(e.num());
    return "(" + to_text(e.num()) + ")/(" + to_text(e.den()) + ")";
}

// --- modular polynomials ------------------------------------------------------

inline Json to_json(const ModularPolynomial& phi) {
    Json coeffs = Json::array();
    for (auto it = phi.coeffs().rbegin(); it != phi.coeffs().rend(); ++it)
        coeffs.push_back(Json::array({it->first.first, it->first.second, it->second.get_str()}));
    return Json{{"level", phi.level()}, {"coeffs", coeffs}};
}

inline std::string to_text(const ModularPolynomial& phi) {
    std::string out = "\xCE\xA6_" + std::to_string(phi.level()) + "(X,Y) = ";
    bool first = true;
    for (const auto& [ab, c] : phi.expanded()) {
        auto [a, b] = ab;
        bool neg = c < 0;
        BigInt mag = abs(c);
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string mono;
        if (a > 0)
            mono += "X" + (a > 1 ? "^" + std::to_string(a) : std::string());
        if (b > 0)
            mono += (mono.empty() ? "" : "*") + std::string("Y") + (b > 1 ? "^" + std::to_string(b) : std::string());
        if (mono.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + "*" + mono;
    }
    return out;
}

// --- bounds --------------------------------------------------------------------

inline Json to_json(const BoundResult& r) { return Json{{"trace", r.trace}, {"value", r.value.get_str()}}; }

} // namespace jchi
