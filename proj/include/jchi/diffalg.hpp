#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "jchi/arith.hpp"
#include "jchi/error.hpp"
#include "jchi/jet.hpp"
#include "jchi/qseries.hpp"
#include "jchi/ratfun.hpp"

namespace jchi {

// Differential rational function num/den in jet variables. Normal form:
// gcd(num, den) = 1 and den has leading coefficient 1, so structural
// equality is mathematical equality.
class DiffExpression {
public:
    DiffExpression() : den_(1) {}
    DiffExpression(const JetPolynomial& p) : num_(p), den_(1) {}  // NOLINT
    DiffExpression(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    DiffExpression(long c) : DiffExpression(Rational(c)) {}  // NOLINT
    DiffExpression(JetPolynomial num, JetPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static DiffExpression var(int coord, int order) { return DiffExpression(JetPolynomial::var(coord, order)); }

    const JetPolynomial& num() const { return num_; }
    const JetPolynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend DiffExpression operator+(const DiffExpression& a, const DiffExpression& b) {
        if (a.den_ == b.den_)
            return DiffExpression(a.num_ + b.num_, a.den_);
        return DiffExpression(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend DiffExpression operator-(const DiffExpression& a, const DiffExpression& b) {
        if (a.den_ == b.den_)
            return DiffExpression(a.num_ - b.num_, a.den_);
        return DiffExpression(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend DiffExpression operator-(const DiffExpression& a) {
        DiffExpression r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend DiffExpression operator*(const DiffExpression& a, const DiffExpression& b) {
        return DiffExpression(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend DiffExpression operator/(const DiffExpression& a, const DiffExpression& b) {
        if (b.is_zero())
            throw ArithmeticError("division by zero expression");
        return DiffExpression(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const DiffExpression& a, const DiffExpression& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    DiffExpression pow(unsigned e) const {
        DiffExpression r;
        r.num_ = num_.pow(e);
        r.den_ = den_.pow(e);
        return r;  // powers of coprime polynomials stay coprime
    }

    // Total derivative by the quotient rule.
    DiffExpression derivative() const {
        if (den_.is_constant()) {
            DiffExpression r;
            r.num_ = total_derivative(num_);
            r.den_ = den_;
            return r;
        }
        return DiffExpression(total_derivative(num_) * den_ - num_ * total_derivative(den_), den_ * den_);
    }

private:
    void normalize() {
        if (den_.is_zero())
            throw DomainError("expression with vanishing denominator");
        if (num_.is_zero()) {
            den_ = JetPolynomial(1);
            return;
        }
        JetPolynomial g = polynomial_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
        Rational lc = den_.leading().second;
        if (lc != Rational(1)) {
            num_ *= lc.inverse();
            den_ *= lc.inverse();
        }
    }

    JetPolynomial num_;
    JetPolynomial den_;
};

inline int max_order(const DiffExpression& e) { return std::max(max_order(e.num()), max_order(e.den())); }

// Constant numbers of the j-equation.
namespace jconst {
inline const Rational k1728{1728};
inline const Rational k1968{1968};
inline const Rational k2654208{2654208};
} // namespace jconst

// S(e) = (e''/e')' - (e''/e')^2/2 = (e' e''' - 3/2 e''^2) / e'^2.
inline DiffExpression schwarzian(const DiffExpression& e) {
    DiffExpression d1 = e.derivative();
    if (d1.is_zero())
        throw DomainError("Schwarzian of an expression with vanishing derivative");
    DiffExpression d2 = d1.derivative(), d3 = d2.derivative();
    return (d1 * d3 - DiffExpression(Rational(3, 2)) * d2.pow(2)) / d1.pow(2);
}

// R(y) = (y^2 - 1968 y + 2654208) / (2 y^2 (y - 1728)^2).
inline DiffExpression j_rational_coefficient(const DiffExpression& y) {
    DiffExpression top = y.pow(2) - DiffExpression(jconst::k1968) * y + DiffExpression(jconst::k2654208);
    DiffExpression bottom = DiffExpression(2) * y.pow(2) * (y - DiffExpression(jconst::k1728)).pow(2);
    if (bottom.is_zero())
        throw DomainError("R(y) has a pole along the given expression");
    return top / bottom;
}

// chi(e) = S(e) + R(e) (e')^2.
inline DiffExpression chi(const DiffExpression& e) {
    return schwarzian(e) + j_rational_coefficient(e) * e.derivative().pow(2);
}

inline DiffExpression schwarzian_expr() { return schwarzian(DiffExpression::var(1, 0)); }
inline DiffExpression chi_expr() { return chi(DiffExpression::var(1, 0)); }

// Cleared fiber equation chi(x) = a on tau_3 A^1:
// (x''' x' - 3/2 x''^2)(2 x^2 (x-1728)^2) + (x^2 - 1968 x + 2654208) x'^4
//   - a x'^2 (2 x^2 (x-1728)^2).
inline JetPolynomial fiber_polynomial_with(const JetPolynomial& a) {
    const auto x = JetPolynomial::var(1, 0), x1 = JetPolynomial::var(1, 1);
    const auto x2 = JetPolynomial::var(1, 2), x3 = JetPolynomial::var(1, 3);
    const JetPolynomial cleared = JetPolynomial(2) * x.pow(2) * (x - JetPolynomial(jconst::k1728)).pow(2);
    const JetPolynomial schwarz = x3 * x1 - JetPolynomial(Rational(3, 2)) * x2.pow(2);
    const JetPolynomial r_top = x.pow(2) - JetPolynomial(jconst::k1968) * x + JetPolynomial(jconst::k2654208);
    return schwarz * cleared + r_top * x1.pow(4) - a * x1.pow(2) * cleared;
}

inline JetPolynomial fiber_polynomial(const Rational& a) { return fiber_polynomial_with(JetPolynomial(a)); }

// Fiber parameter kept as the degree-0 indeterminate JetVariable::parameter().
inline JetPolynomial fiber_polynomial_symbolic() {
    return fiber_polynomial_with(JetPolynomial::variable(JetVariable::parameter()));
}

// T = {x' = 0}, removed from every fiber.
inline JetPolynomial excluded_locus() { return JetPolynomial::var(1, 1); }

// num/den rescaled jointly to coprime integer coefficients, den leading
// coefficient positive.
inline std::pair<JetPolynomial, JetPolynomial> integer_cleared(const DiffExpression& e) {
    BigInt l = 1, g = 0;
    for (const auto* p : {&e.num(), &e.den()})
        for (const auto& [m, c] : p->terms())
            l = lcm(l, c.denominator());
    for (const auto* p : {&e.num(), &e.den()})
        for (const auto& [m, c] : p->terms())
            g = gcd(g, BigInt(c.numerator() * l / c.denominator()));
    Rational s = Rational(l, g == 0 ? BigInt(1) : g);
    return {e.num() * s, e.den() * s};
}

// Denominator-cleared form of e = a (or e = 0 without a parameter).
inline JetPolynomial algebraize(const DiffExpression& e, bool with_parameter) {
    auto [num, den] = integer_cleared(e);
    if (!with_parameter)
        return num;
    return num - JetPolynomial::variable(JetVariable::parameter()) * den;
}

// Evaluation x_{1,k} -> (c d/dt)^k f.
inline RatFun eval_ratfun(const JetPolynomial& p, const RatFun& f, const Rational& scale = Rational(1)) {
    std::map<int, RatFun> jets;
    auto jet = [&](int k) -> const RatFun& {
        auto it = jets.find(k);
        if (it != jets.end())
            return it->second;
        RatFun d = f;
        for (int i = 0; i < k; ++i)
            d = RatFun(scale) * d.derivative();
        return jets.emplace(k, d).first->second;
    };
    RatFun acc;
    for (const auto& [m, c] : p.terms()) {
        RatFun term(c);
        for (const auto& [v, e] : m) {
            if (v.coord != 1)
                throw UsageError("rational-function evaluation supports a single coordinate");
            term = term * jet(v.order).pow(e);
        }
        acc = acc + term;
    }
    return acc;
}

inline RatFun eval_ratfun(const DiffExpression& e, const RatFun& f, const Rational& scale = Rational(1)) {
    RatFun den = eval_ratfun(e.den(), f, scale);
    if (den.is_zero())
        throw DomainError("expression has a pole at the given function");
    return eval_ratfun(e.num(), f, scale) / den;
}

inline RatFun schwarzian_of(const RatFun& f, const Rational& scale = Rational(1)) {
    if (f.is_constant())
        throw DomainError("Schwarzian of a constant function");
    return eval_ratfun(schwarzian_expr(), f, scale);
}

inline RatFun chi_of(const RatFun& f) {
    if (f.is_constant())
        throw DomainError("chi of a constant function");
    return eval_ratfun(chi_expr(), f);
}

// S(f o g) == (g')^2 S(f) o g + S(g).
inline bool schwarzian_chain_check(const RatFun& f, const RatFun& g) {
    if (f.is_constant() || g.is_constant())
        throw DomainError("chain rule check needs nonconstant functions");
    RatFun lhs = schwarzian_of(f.compose(g));
    RatFun rhs = g.derivative().pow(2) * schwarzian_of(f).compose(g) + schwarzian_of(g);
    return lhs == rhs;
}

// chi(f o g) == (chi(f) o g)(g')^2 + S(g).
inline bool chi_composition_check(const RatFun& f, const RatFun& g) {
    if (f.is_constant() || g.is_constant())
        throw DomainError("chi composition check needs nonconstant functions");
    RatFun lhs = chi_of(f.compose(g));
    RatFun rhs = chi_of(f).compose(g) * g.derivative().pow(2) + schwarzian_of(g);
    return lhs == rhs;
}

// S_{c d/dt}(f) == c^2 S_{d/dt}(f).
inline bool scaling_check(const Rational& c, const RatFun& f) {
    if (c.is_zero())
        throw DomainError("derivation scale must be nonzero");
    if (f.is_constant())
        throw DomainError("scaling check needs a nonconstant function");
    return schwarzian_of(f, c) == RatFun(c * c) * schwarzian_of(f);
}

// (f, theta f, ..., theta^l f).
inline std::vector<QSeries> nabla(const QSeries& f, unsigned order) {
    std::vector<QSeries> out{f};
    for (unsigned k = 0; k < order; ++k)
        out.push_back(theta(out.back()));
    return out;
}

// point[i-1][k] is the value of x_{i,k}.
using JetPoint = std::vector<std::vector<QSeries>>;

namespace detail {
inline const QSeries& point_value(const JetPoint& point, const JetVariable& v) {
    if (v.is_parameter())
        throw UsageError("series evaluation needs a numeric fiber parameter");
    auto i = static_cast<std::size_t>(v.coord - 1);
    auto k = static_cast<std::size_t>(v.order);
    if (v.coord < 1 || i >= point.size() || k >= point[i].size())
        throw UsageError("evaluation point does not cover every jet variable of the polynomial");
    return point[i][k];
}
} // namespace detail

inline QSeries eval_qseries(const JetPolynomial& p, const JetPoint& point) {
    std::map<std::pair<JetVariable, unsigned>, QSeries> powers;
    auto power = [&](const JetVariable& v, unsigned e) -> const QSeries& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end())
            return it->second;
        return powers.emplace(key, series_pow(detail::point_value(point, v), e)).first->second;
    };
    std::optional<QSeries> acc;
    Rational constant;
    for (const auto& [m, c] : p.terms()) {
        if (m.empty()) {
            constant = c;
            continue;
        }
        QSeries term = power(m[0].first, m[0].second);
        for (std::size_t i = 1; i < m.size(); ++i)
            term = term * power(m[i].first, m[i].second);
        term *= c;
        acc = acc ? *acc + term : term;
    }
    if (!acc) {
        // constant polynomial: valid wherever the point is known
        long denom = 1;
        for (const auto& coord : point)
            for (const auto& s : coord)
                denom = std::lcm(denom, s.denom());
        long trunc = kExactTrunc;
        for (const auto& coord : point)
            for (const auto& s : coord)
                trunc = std::min(trunc, s.rescaled(denom).trunc());
        QSeries out(denom, trunc);
        out.add_constant(constant);
        return out;
    }
    acc->add_constant(constant);
    return *acc;
}

inline QSeries eval_qseries(const JetPolynomial& p, const std::vector<QSeries>& single) {
    return eval_qseries(p, JetPoint{single});
}

// Lowest exponent any monomial of p can contribute at the point.
inline Rational support_lower_bound(const JetPolynomial& p, const JetPoint& point) {
    std::optional<Rational> lo;
    for (const auto& [m, c] : p.terms()) {
        Rational v;
        for (const auto& [var, e] : m)
            v += detail::point_value(point, var).valuation() * Rational(static_cast<long>(e));
        if (!lo || v < *lo)
            lo = v;
    }
    return lo.value_or(Rational(0));
}

inline SeriesReport eval_qseries_report(const JetPolynomial& p, const JetPoint& point) {
    return series_report(eval_qseries(p, point), support_lower_bound(p, point));
}

// Cleared chi-equation with a = 0 evaluated at nabla_3 of a series.
inline SeriesReport verify_chi(const QSeries& j) {
    return eval_qseries_report(fiber_polynomial(Rational(0)), JetPoint{nabla(j, 3)});
}

} // namespace jchi
