#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jchi/arith.hpp"
#include "jchi/error.hpp"
#include "jchi/qseries.hpp"

namespace jchi {

// Symmetric integer polynomial Phi_N(X, Y). Only pairs (a, b) with a >= b
// are stored; the coefficient of X^a Y^b and of X^b Y^a is coeffs[(a, b)].
class ModularPolynomial {
public:
    ModularPolynomial() = default;
    ModularPolynomial(unsigned level, std::map<std::pair<unsigned, unsigned>, BigInt> coeffs)
        : level_(level), coeffs_(std::move(coeffs)) {
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            if (it->first.first < it->first.second)
                throw UsageError("modular polynomial keys must satisfy a >= b");
            it = it->second == 0 ? coeffs_.erase(it) : std::next(it);
        }
    }

    unsigned level() const { return level_; }
    unsigned degree() const { return level_ + 1; }
    const std::map<std::pair<unsigned, unsigned>, BigInt>& coeffs() const { return coeffs_; }

    // Coefficient of X^a Y^b.
    BigInt coeff(unsigned a, unsigned b) const {
        auto it = coeffs_.find(a >= b ? std::make_pair(a, b) : std::make_pair(b, a));
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    // Every monomial X^a Y^b with its coefficient, (a, b) descending.
    std::vector<std::pair<std::pair<unsigned, unsigned>, BigInt>> expanded() const {
        std::vector<std::pair<std::pair<unsigned, unsigned>, BigInt>> out;
        for (const auto& [ab, c] : coeffs_) {
            out.emplace_back(ab, c);
            if (ab.first != ab.second)
                out.emplace_back(std::make_pair(ab.second, ab.first), c);
        }
        std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
        return out;
    }

    // Test hook: perturb one coefficient.
    void add_to_coeff(unsigned a, unsigned b, const BigInt& delta) {
        auto key = a >= b ? std::make_pair(a, b) : std::make_pair(b, a);
        coeffs_[key] += delta;
        if (coeffs_[key] == 0)
            coeffs_.erase(key);
    }

    friend bool operator==(const ModularPolynomial&, const ModularPolynomial&) = default;

private:
    unsigned level_ = 0;
    std::map<std::pair<unsigned, unsigned>, BigInt> coeffs_;
};

inline void check_supported_level(unsigned level) {
    if (level != 2 && level != 3 && level != 5)
        throw UsageError("modular polynomials are supported for levels 2, 3 and 5, got " + std::to_string(level));
}

// Window length past the deepest pole used by default.
inline long default_modular_precision(unsigned level) {
    return static_cast<long>((level + 1) * (level + 1) + 8);
}

// Writes s as P(j) by eliminating pole terms with powers of j; the remainder
// must vanish on the whole valid window. P is returned low degree first.
inline std::vector<BigInt> reduce_to_j(const QSeries& s, const QSeries& j) {
    if (s.denom() != 1 || j.denom() != 1)
        throw UsageError("reduce_to_j expects integer exponents");
    if (j.valuation_key() != -1 || j.coeff(-1) != Rational(1))
        throw UsageError("reduce_to_j expects a series of the form q^-1 + O(1)");
    long pole = std::max(0L, -s.valuation_key());
    if (s.trunc() <= 0)
        throw PrecisionError("series is not known through its constant term");
    std::vector<QSeries> powers{QSeries::constant(Rational(1))};
    for (long m = 1; m <= pole; ++m)
        powers.push_back(powers.back() * j);
    QSeries r = s;
    std::vector<BigInt> poly(static_cast<std::size_t>(pole) + 1);
    for (long m = pole; m >= 0; --m) {
        if (r.trunc() <= -m)
            throw PrecisionError("j-power elimination ran out of precision");
        Rational c = r.coeff(-m);
        if (!c.is_integer())
            throw PrecisionError("non-integral coefficient during j-reduction: " + c.to_string());
        poly[static_cast<std::size_t>(m)] = c.numerator();
        if (!c.is_zero())
            r -= powers[static_cast<std::size_t>(m)] * c;
    }
    if (r.trunc() <= 1)
        throw PrecisionError("no coefficients left to certify the j-reduction");
    if (!r.is_zero())
        throw PrecisionError("nonzero remainder at q^" + r.valuation().to_string() + " after j-reduction");
    while (poly.size() > 1 && poly.back() == 0)
        poly.pop_back();
    return poly;
}

namespace detail {

// Coefficients (in X, low degree first) of prod (X - s_i).
inline std::vector<CycSeries> monic_from_roots(const std::vector<CycSeries>& roots, unsigned level) {
    std::vector<CycSeries> poly{CycSeries::constant(Cyclotomic(level, Rational(1)))};
    for (const auto& root : roots) {
        std::vector<CycSeries> next(poly.size() + 1);
        next[poly.size()] = poly.back();
        for (std::size_t i = poly.size(); i-- > 0;) {
            CycSeries shifted = i > 0 ? poly[i - 1] : CycSeries();
            CycSeries term = -(poly[i] * root);
            next[i] = i > 0 ? shifted + term : term;
        }
        poly = std::move(next);
    }
    return poly;
}

} // namespace detail

// Phi_N from the N+1 conjugates j(q^N) and j(z^k q^{1/N}). precision is the
// number of q-exponents, counted from the deepest pole -(N+1), on which every
// symmetric function is known.
inline ModularPolynomial modular_polynomial(unsigned level, std::optional<long> precision = std::nullopt) {
    check_supported_level(level);
    const long n = level;
    const long window = precision.value_or(default_modular_precision(level));
    const long valid_to = window - (n + 1);  // exclusive exponent bound of the symmetric functions
    if (valid_to < 2)
        throw PrecisionError("precision " + std::to_string(window) + " does not reach past the constant term");

    // Fractional-exponent factors lose (N-1)/N and the q^N factor costs N in
    // the worst product; see the trunc rule of series multiplication.
    const long j_order = n * valid_to + n * n + n;
    const QSeries j = j_series(j_order);

    std::vector<CycSeries> roots;
    roots.push_back(to_cyclotomic(substitute(j.truncated(valid_to / n + 2), Rational(n)), level));
    for (long k = 0; k < n; ++k)
        roots.push_back(substitute(j, RootOfUnity{level, k}, Rational(1, n)));

    const std::vector<CycSeries> cs = detail::monic_from_roots(roots, level);
    const QSeries j_reduce = j_series(valid_to + n + 2);

    std::map<std::pair<unsigned, unsigned>, BigInt> coeffs;
    std::map<std::pair<unsigned, unsigned>, BigInt> all;
    for (std::size_t a = 0; a < cs.size(); ++a) {
        auto integral = cs[a].coarsened(1);
        if (!integral)
            throw Error("fractional exponents survived in a symmetric function of the conjugates");
        auto rational = to_rational(*integral);
        if (!rational)
            throw Error("irrational cyclotomic coefficient in a symmetric function of the conjugates");
        QSeries s = rational->truncated(valid_to);
        if (s.trunc() < valid_to)
            throw PrecisionError("symmetric function known only below q^" + std::to_string(s.trunc()));
        std::vector<BigInt> p = reduce_to_j(s, j_reduce);
        if (p.size() > static_cast<std::size_t>(n + 2))
            throw PrecisionError("j-degree exceeds N+1");
        for (std::size_t b = 0; b < p.size(); ++b)
            if (p[b] != 0)
                all[{static_cast<unsigned>(a), static_cast<unsigned>(b)}] = p[b];
    }
    for (const auto& [ab, c] : all) {
        auto [a, b] = ab;
        auto it = all.find({b, a});
        BigInt other = it == all.end() ? BigInt(0) : it->second;
        if (other != c)
            throw Error("computed modular polynomial is not symmetric");
        if (a >= b)
            coeffs[ab] = c;
    }
    return ModularPolynomial(level, std::move(coeffs));
}

// Phi(x, y) at two series.
inline QSeries evaluate(const ModularPolynomial& phi, const QSeries& x, const QSeries& y) {
    const unsigned d = phi.degree();
    std::vector<QSeries> xp{QSeries::constant(Rational(1))}, yp{QSeries::constant(Rational(1))};
    for (unsigned i = 1; i <= d; ++i) {
        xp.push_back(xp.back() * x);
        yp.push_back(yp.back() * y);
    }
    std::optional<QSeries> acc;
    for (const auto& [ab, c] : phi.expanded()) {
        QSeries term = xp[ab.first] * yp[ab.second] * Rational(c);
        acc = acc ? *acc + term : term;
    }
    return acc.value_or(QSeries(1, std::min(x.trunc(), y.trunc())));
}

// Phi_N(j(q), j(q^N)) on its valid window.
inline SeriesReport verify_hecke(const ModularPolynomial& phi, long order) {
    const QSeries j = j_series(order);
    const QSeries jn = substitute(j, Rational(static_cast<long>(phi.level())));
    QSeries value = evaluate(phi, j, jn);
    long lo = 0;
    for (const auto& [ab, c] : phi.expanded())
        lo = std::min(lo, -static_cast<long>(ab.first) - static_cast<long>(phi.level() * ab.second));
    if (value.trunc() <= lo)
        throw PrecisionError("order " + std::to_string(order) + " leaves an empty verification window");
    return series_report(value, Rational(lo));
}

inline SeriesReport verify_hecke(unsigned level, long order) {
    return verify_hecke(modular_polynomial(level), order);
}

// Phi_N(X, Y) == (X^N - Y)(X - Y^N) mod N coefficientwise.
inline bool kronecker_check(const ModularPolynomial& phi) {
    const unsigned n = phi.level();
    const BigInt modulus = n;
    auto target = [&](unsigned a, unsigned b) -> BigInt {
        BigInt t = 0;
        if ((a == n + 1 && b == 0) || (a == 0 && b == n + 1))
            t += 1;
        if (a == n && b == n)
            t -= 1;
        if (a == 1 && b == 1)
            t -= 1;
        return t;
    };
    for (unsigned a = 0; a <= n + 1; ++a) {
        for (unsigned b = 0; b <= n + 1; ++b) {
            BigInt diff = phi.coeff(a, b) - target(a, b);
            BigInt r;
            mpz_mod(r.get_mpz_t(), diff.get_mpz_t(), modulus.get_mpz_t());
            if (r != 0)
                return false;
        }
    }
    return true;
}

inline bool kronecker_check(unsigned level) { return kronecker_check(modular_polynomial(level)); }

} // namespace jchi
