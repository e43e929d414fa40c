#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jchi/arith.hpp"
#include "jchi/error.hpp"

namespace jchi {

// Coordinate x_{coord, order} of a prolongation space. coord 0 is reserved
// for the symbolic fiber parameter, which is a constant of the derivation
// and carries degree 0.
struct JetVariable {
    int coord = 1;
    int order = 0;

    static constexpr JetVariable parameter() { return {0, 0}; }
    bool is_parameter() const { return coord == 0; }

    friend auto operator<=>(const JetVariable&, const JetVariable&) = default;
};

// Sparse exponent vector, sorted by variable, no zero exponents.
using Monomial = std::vector<std::pair<JetVariable, unsigned>>;

// Lexicographic order with the largest variable most significant.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto ia = a.rbegin(), ib = b.rbegin();
        for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
            if (ia->first != ib->first)
                return ia->first < ib->first;
            if (ia->second != ib->second)
                return ia->second < ib->second;
        }
        return ia == a.rend() && ib != b.rend();
    }
};

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first))
            out.push_back(*ia++);
        else if (ia == a.end() || ib->first < ia->first)
            out.push_back(*ib++);
        else {
            out.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

// a / b when b divides a.
inline std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b) {
    Monomial out;
    auto ia = a.begin();
    for (const auto& [v, e] : b) {
        while (ia != a.end() && ia->first < v)
            out.push_back(*ia++);
        if (ia == a.end() || ia->first != v || ia->second < e)
            return std::nullopt;
        if (ia->second > e)
            out.emplace_back(v, ia->second - e);
        ++ia;
    }
    while (ia != a.end())
        out.push_back(*ia++);
    return out;
}

inline unsigned monomial_degree_in(const Monomial& m, const JetVariable& v) {
    for (const auto& [w, e] : m)
        if (w == v)
            return e;
    return 0;
}

inline Monomial monomial_without(const Monomial& m, const JetVariable& v) {
    Monomial out;
    for (const auto& p : m)
        if (p.first != v)
            out.push_back(p);
    return out;
}

// Jet-variable degree; the parameter does not count.
inline unsigned monomial_total_degree(const Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m)
        if (!v.is_parameter())
            d += e;
    return d;
}

class JetPolynomial {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    JetPolynomial() = default;
    JetPolynomial(const Rational& c) {  // NOLINT: constants embed implicitly
        if (!c.is_zero())
            terms_.emplace(Monomial{}, c);
    }
    JetPolynomial(long c) : JetPolynomial(Rational(c)) {}  // NOLINT

    static JetPolynomial variable(JetVariable v, unsigned power = 1) {
        JetPolynomial p;
        if (power == 0)
            return JetPolynomial(1);
        p.terms_.emplace(Monomial{{v, power}}, Rational(1));
        return p;
    }
    static JetPolynomial var(int coord, int order) { return variable({coord, order}); }
    static JetPolynomial term(const Monomial& m, const Rational& c) {
        JetPolynomial p;
        if (!c.is_zero())
            p.terms_.emplace(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    Rational constant_value() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Leading term in the lexicographic order.
    const std::pair<const Monomial, Rational>& leading() const {
        if (terms_.empty())
            throw DomainError("zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    std::set<JetVariable> variables() const {
        std::set<JetVariable> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m)
                vs.insert(v);
        return vs;
    }

    unsigned degree_in(const JetVariable& v) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, monomial_degree_in(m, v));
        return d;
    }

    // Coefficients of powers of v, each free of v.
    std::map<unsigned, JetPolynomial> coefficients_in(const JetVariable& v) const {
        std::map<unsigned, JetPolynomial> out;
        for (const auto& [m, c] : terms_)
            out[monomial_degree_in(m, v)].add_term(monomial_without(m, v), c);
        return out;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero())
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    JetPolynomial& operator+=(const JetPolynomial& o) {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    JetPolynomial& operator-=(const JetPolynomial& o) {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    JetPolynomial& operator*=(const Rational& r) {
        if (r.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= r;
        return *this;
    }

    friend JetPolynomial operator+(JetPolynomial a, const JetPolynomial& b) { return a += b; }
    friend JetPolynomial operator-(JetPolynomial a, const JetPolynomial& b) { return a -= b; }
    friend JetPolynomial operator-(JetPolynomial a) { return a *= Rational(-1); }
    friend JetPolynomial operator*(JetPolynomial a, const Rational& r) { return a *= r; }
    friend JetPolynomial operator*(const Rational& r, JetPolynomial a) { return a *= r; }
    friend JetPolynomial operator*(const JetPolynomial& a, const JetPolynomial& b) {
        JetPolynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term(monomial_mul(ma, mb), ca * cb);
        return out;
    }
    JetPolynomial& operator*=(const JetPolynomial& o) { return *this = *this * o; }
    friend bool operator==(const JetPolynomial& a, const JetPolynomial& b) { return a.terms_ == b.terms_; }

    JetPolynomial pow(unsigned e) const {
        JetPolynomial r(1), b = *this;
        while (e) {
            if (e & 1u)
                r *= b;
            e >>= 1u;
            if (e)
                b *= b;
        }
        return r;
    }

    // Partial derivative with respect to one coordinate.
    JetPolynomial partial(const JetVariable& v) const {
        JetPolynomial out;
        for (const auto& [m, c] : terms_) {
            unsigned e = monomial_degree_in(m, v);
            if (e == 0)
                continue;
            Monomial r;
            for (const auto& p : m) {
                if (p.first != v)
                    r.push_back(p);
                else if (p.second > 1)
                    r.emplace_back(v, p.second - 1);
            }
            out.add_term(r, c * Rational(static_cast<long>(e)));
        }
        return out;
    }

    // Exact division; empty when b does not divide *this.
    std::optional<JetPolynomial> divide_exact(const JetPolynomial& b) const {
        if (b.is_zero())
            throw ArithmeticError("polynomial division by zero");
        JetPolynomial rem = *this, q;
        const auto& [lm_b, lc_b] = b.leading();
        while (!rem.is_zero()) {
            const auto& [lm, lc] = rem.leading();
            auto t = monomial_div(lm, lm_b);
            if (!t)
                return std::nullopt;
            JetPolynomial step = term(*t, lc / lc_b);
            q += step;
            rem -= step * b;
        }
        return q;
    }

    // Scale so that the leading coefficient is 1.
    JetPolynomial monic() const {
        if (is_zero())
            return *this;
        return *this * leading().second.inverse();
    }

private:
    Terms terms_;
};

inline JetPolynomial total_derivative(const JetPolynomial& p) {
    JetPolynomial out;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            const auto& [v, e] = m[i];
            if (v.is_parameter())
                continue;
            Monomial r = m;
            if (e == 1)
                r.erase(r.begin() + static_cast<long>(i));
            else
                r[i].second = e - 1;
            r = monomial_mul(r, Monomial{{JetVariable{v.coord, v.order + 1}, 1u}});
            out.add_term(r, c * Rational(static_cast<long>(e)));
        }
    }
    return out;
}

inline unsigned total_degree(const JetPolynomial& p) {
    if (p.is_zero())
        throw DomainError("total degree of the zero polynomial is undefined");
    unsigned d = 0;
    for (const auto& [m, c] : p.terms())
        d = std::max(d, monomial_total_degree(m));
    return d;
}

inline int max_order(const JetPolynomial& p) {
    int k = -1;
    for (const auto& v : p.variables())
        if (!v.is_parameter())
            k = std::max(k, v.order);
    return k;
}

inline JetPolynomial polynomial_gcd(const JetPolynomial& a, const JetPolynomial& b);

namespace detail {

inline std::optional<JetVariable> main_variable(const JetPolynomial& a, const JetPolynomial& b) {
    auto va = a.variables(), vb = b.variables();
    std::optional<JetVariable> v;
    if (!va.empty())
        v = *va.rbegin();
    if (!vb.empty() && (!v || *v < *vb.rbegin()))
        v = *vb.rbegin();
    return v;
}

// gcd of the coefficients of a viewed as a polynomial in v.
inline JetPolynomial content_in(const JetPolynomial& a, const JetVariable& v) {
    JetPolynomial g;
    for (const auto& [e, c] : a.coefficients_in(v)) {
        g = polynomial_gcd(g, c);
        if (g.is_constant())
            return JetPolynomial(1);
    }
    return g;
}

inline JetPolynomial primitive_in(const JetPolynomial& a, const JetVariable& v) {
    if (a.is_zero())
        return a;
    auto q = a.divide_exact(content_in(a, v));
    if (!q)
        throw ArithmeticError("content does not divide polynomial");
    return *q;
}

inline JetPolynomial leading_coeff_in(const JetPolynomial& a, const JetVariable& v) {
    auto cs = a.coefficients_in(v);
    return cs.rbegin()->second;
}

// lc(b)^k * a reduced modulo b in v.
inline JetPolynomial pseudo_remainder(JetPolynomial a, const JetPolynomial& b, const JetVariable& v) {
    const unsigned db = b.degree_in(v);
    const JetPolynomial lb = leading_coeff_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        unsigned da = a.degree_in(v);
        JetPolynomial la = leading_coeff_in(a, v);
        a = lb * a - la * JetPolynomial::variable(v, da - db) * b;
    }
    return a;
}

} // namespace detail

// Greatest common divisor over Q, normalized monic (leading coefficient 1).
// Recursive primitive polynomial remainder sequence in the largest variable.
inline JetPolynomial polynomial_gcd(const JetPolynomial& a, const JetPolynomial& b) {
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return JetPolynomial(1);
    const JetVariable v = *detail::main_variable(a, b);
    if (a.degree_in(v) == 0)
        return polynomial_gcd(a, detail::content_in(b, v));
    if (b.degree_in(v) == 0)
        return polynomial_gcd(detail::content_in(a, v), b);

    JetPolynomial ca = detail::content_in(a, v), cb = detail::content_in(b, v);
    JetPolynomial c = polynomial_gcd(ca, cb);
    JetPolynomial pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
    if (pa.degree_in(v) < pb.degree_in(v))
        std::swap(pa, pb);
    JetPolynomial g;
    while (true) {
        JetPolynomial r = detail::pseudo_remainder(pa, pb, v);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree_in(v) == 0) {
            g = JetPolynomial(1);
            break;
        }
        pa = std::move(pb);
        pb = detail::primitive_in(r, v);
    }
    return (c * detail::primitive_in(g, v)).monic();
}

// No repeated factor: for each variable v, gcd(p, dp/dv) is free of v.
inline bool is_squarefree(const JetPolynomial& p) {
    if (p.is_zero())
        throw DomainError("squarefreeness of the zero polynomial is undefined");
    for (const auto& v : p.variables()) {
        JetPolynomial g = polynomial_gcd(p, p.partial(v));
        if (g.degree_in(v) > 0)
            return false;
    }
    return true;
}

} // namespace jchi
