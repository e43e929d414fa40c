#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "jchi/arith.hpp"
#include "jchi/error.hpp"

namespace jchi {

// Truncation bound used for series that are known exactly (finite sums).
inline constexpr long kExactTrunc = 1L << 40;

inline long clamp_trunc(long t) { return std::min(t, kExactTrunc); }

// Truncated Laurent series in q^{1/denom}. A stored key k stands for the
// exponent k/denom. Coefficients at keys >= trunc are unknown; coefficients
// below the smallest stored key are known to be zero.
template <class Ring>
class Series {
public:
    using Coeff = Ring;

    Series() = default;
    Series(long denom, long trunc) : denom_(denom), trunc_(clamp_trunc(trunc)) {
        if (denom <= 0)
            throw UsageError("series lattice denominator must be positive");
    }

    static Series monomial(const Ring& c, long key, long denom, long trunc) {
        Series s(denom, trunc);
        s.set(key, c);
        return s;
    }

    // Exactly known constant.
    static Series constant(const Ring& c, long denom = 1) { return monomial(c, 0, denom, kExactTrunc); }

    long denom() const { return denom_; }
    long trunc() const { return trunc_; }
    bool exact() const { return trunc_ >= kExactTrunc; }
    const std::map<long, Ring>& terms() const { return terms_; }

    Rational trunc_exponent() const { return Rational(trunc_, denom_); }

    // Smallest key with a nonzero coefficient; trunc when zero on the window.
    long valuation_key() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }
    Rational valuation() const { return Rational(valuation_key(), denom_); }

    bool is_zero() const { return terms_.empty(); }

    void set(long key, const Ring& c) {
        if (key >= trunc_)
            return;
        if (c.is_zero())
            terms_.erase(key);
        else
            terms_[key] = c;
    }

    void add_to(long key, const Ring& c) {
        if (key >= trunc_)
            return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    Ring coeff(long key) const {
        if (key >= trunc_)
            throw PrecisionError("coefficient requested beyond truncation order");
        auto it = terms_.find(key);
        return it == terms_.end() ? Ring{} : it->second;
    }

    // Coefficient at a rational exponent; zero if the exponent is off-lattice.
    Ring coeff_at(const Rational& exponent) const {
        Rational k = exponent * Rational(denom_);
        if (!k.is_integer())
            return Ring{};
        return coeff(k.numerator().get_si());
    }

    // Re-express on the finer lattice Z/new_denom.
    Series rescaled(long new_denom) const {
        if (new_denom == denom_)
            return *this;
        if (new_denom % denom_ != 0)
            throw UsageError("lattice rescale must refine the lattice");
        long f = new_denom / denom_;
        Series out(new_denom, exact() ? kExactTrunc : trunc_ * f);
        for (const auto& [k, c] : terms_)
            out.terms_.emplace(k * f, c);
        return out;
    }

    Series truncated(long new_trunc) const {
        Series out(denom_, std::min(trunc_, new_trunc));
        for (const auto& [k, c] : terms_) {
            if (k >= out.trunc_)
                break;
            out.terms_.emplace(k, c);
        }
        return out;
    }

    // Drop to a coarser lattice when every stored key (and the bound) allows it.
    std::optional<Series> coarsened(long new_denom) const {
        if (denom_ % new_denom != 0)
            return std::nullopt;
        long f = denom_ / new_denom;
        for (const auto& [k, c] : terms_)
            if (k % f != 0)
                return std::nullopt;
        // keys k' with k'*f < trunc, i.e. k' < ceil(trunc/f)
        long t = exact() ? kExactTrunc : ceil_div(trunc_, f);
        Series out(new_denom, t);
        for (const auto& [k, c] : terms_)
            out.terms_.emplace(k / f, c);
        return out;
    }

    Series& operator+=(const Series& o) { return *this = combine(*this, o, false); }
    Series& operator-=(const Series& o) { return *this = combine(*this, o, true); }
    Series& operator*=(const Series& o) { return *this = multiply(*this, o); }
    Series& operator*=(const Rational& r) {
        if (r.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_)
            c *= r;
        return *this;
    }
    Series& operator*=(const Ring& r)
        requires(!std::is_same_v<Ring, Rational>)
    {
        if (r.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_)
            c = c * r;
        return *this;
    }

    // Adds an exactly known constant.
    Series& add_constant(const Ring& c) {
        add_to(0, c);
        return *this;
    }

    friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
    friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
    friend Series operator*(const Series& a, const Series& b) { return multiply(a, b); }
    friend Series operator*(Series a, const Rational& r) { return a *= r; }
    friend Series operator*(const Rational& r, Series a) { return a *= r; }
    friend Series operator-(Series a) {
        for (auto& [k, c] : a.terms_)
            c = -c;
        return a;
    }

    // Equality of the known data: same lattice (after refinement), same
    // window, same coefficients.
    friend bool operator==(const Series& a, const Series& b) {
        long d = std::lcm(a.denom_, b.denom_);
        Series x = a.rescaled(d), y = b.rescaled(d);
        return x.trunc_ == y.trunc_ && x.terms_ == y.terms_;
    }

    // Agreement on the common window only.
    friend bool agree_on_window(const Series& a, const Series& b) {
        Series diff = a - b;
        return diff.is_zero();
    }

private:
    static long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

    static Series combine(const Series& a, const Series& b, bool subtract) {
        long d = std::lcm(a.denom_, b.denom_);
        Series x = a.rescaled(d);
        const Series y = b.rescaled(d);
        Series out = x.truncated(std::min(x.trunc_, y.trunc_));
        for (const auto& [k, c] : y.terms_) {
            if (k >= out.trunc_)
                break;
            out.add_to(k, subtract ? -c : c);
        }
        return out;
    }

    static Series multiply(const Series& a, const Series& b) {
        long d = std::lcm(a.denom_, b.denom_);
        const Series x = a.rescaled(d);
        const Series y = b.rescaled(d);
        long vx = x.valuation_key(), vy = y.valuation_key();
        long t = std::min(x.exact() ? kExactTrunc : x.trunc_ + vy, y.exact() ? kExactTrunc : y.trunc_ + vx);
        Series out(d, t);
        if (x.terms_.empty() || y.terms_.empty())
            return out;
        long base = vx + vy;
        long top = std::min(out.trunc_, x.terms_.rbegin()->first + y.terms_.rbegin()->first + 1);
        if (top <= base)
            return out;
        std::vector<std::pair<long, const Ring*>> ys;
        ys.reserve(y.terms_.size());
        for (const auto& [k, c] : y.terms_)
            ys.emplace_back(k, &c);
        std::vector<Ring> acc(static_cast<std::size_t>(top - base));
        for (const auto& [kx, cx] : x.terms_) {
            for (const auto& [ky, cy] : ys) {
                long k = kx + ky;
                if (k >= top)
                    break;
                acc[static_cast<std::size_t>(k - base)].add_product(cx, *cy);
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (!acc[i].is_zero())
                out.terms_.emplace(base + static_cast<long>(i), std::move(acc[i]));
        return out;
    }

    long denom_ = 1;
    long trunc_ = 0;
    std::map<long, Ring> terms_;
};

using QSeries = Series<Rational>;
using CycSeries = Series<Cyclotomic>;

template <class Ring>
Series<Ring> series_mul(const Series<Ring>& f, const Series<Ring>& g) {
    return f * g;
}

template <class Ring>
Series<Ring> series_pow(Series<Ring> base, unsigned e) {
    if (base.is_zero() && e > 0)
        return base * base;
    Ring one = RingTraits<Ring>::one_like(base.is_zero() ? Ring{} : base.terms().begin()->second);
    Series<Ring> result = Series<Ring>::constant(one, base.denom());
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e > 0)
            base = base * base;
    }
    return result;
}

template <class Ring>
Series<Ring> series_invert(const Series<Ring>& f) {
    if (f.is_zero()) {
        if (f.trunc() <= 0)
            throw PrecisionError("series has no known coefficients to invert");
        throw DomainError("cannot invert a series that vanishes on its window");
    }
    if (f.exact())
        throw PrecisionError("inverse of an exact series needs a finite truncation order");
    const long v = f.valuation_key();
    const long relative = f.trunc() - v;
    const Ring lead_inv = f.terms().begin()->second.inverse();

    std::vector<Ring> h(static_cast<std::size_t>(relative));
    for (const auto& [k, c] : f.terms())
        h[static_cast<std::size_t>(k - v)] = c * lead_inv;

    std::vector<Ring> g(static_cast<std::size_t>(relative));
    g[0] = RingTraits<Ring>::one_like(lead_inv);
    for (long n = 1; n < relative; ++n) {
        Ring acc{};
        for (long i = 1; i <= n; ++i) {
            const auto& hi = h[static_cast<std::size_t>(i)];
            if (!hi.is_zero())
                acc.add_product(hi, g[static_cast<std::size_t>(n - i)]);
        }
        g[static_cast<std::size_t>(n)] = -acc;
    }

    Series<Ring> out(f.denom(), -v + relative);
    for (long n = 0; n < relative; ++n)
        out.set(-v + n, g[static_cast<std::size_t>(n)] * lead_inv);
    return out;
}

// theta = q d/dq: q^{k/d} -> (k/d) q^{k/d}.
template <class Ring>
Series<Ring> theta(const Series<Ring>& f) {
    Series<Ring> out(f.denom(), f.trunc());
    for (const auto& [k, c] : f.terms())
        out.set(k, c * Rational(k, f.denom()));
    return out;
}

struct RootOfUnity {
    unsigned level = 2;
    long power = 0;
};

// q^{1/d} -> q^{s/d}.
template <class Ring>
Series<Ring> substitute(const Series<Ring>& f, const Rational& scale) {
    if (scale.sign() <= 0)
        throw UsageError("substitution scale must be a positive rational");
    long p = scale.numerator().get_si();
    long r = scale.denominator().get_si();
    Series<Ring> out(f.denom() * r, f.exact() ? kExactTrunc : f.trunc() * p);
    for (const auto& [k, c] : f.terms())
        out.set(k * p, c);
    return out;
}

// q^{1/d} -> z^k q^{s/d} with z a primitive root of unity of the given level;
// the coefficient at key k picks up z^{power*k}.
template <class Ring>
CycSeries substitute(const Series<Ring>& f, const RootOfUnity& root, const Rational& scale) {
    if (scale.sign() <= 0)
        throw UsageError("substitution scale must be a positive rational");
    if (root.power < 0 || root.power >= static_cast<long>(root.level))
        throw UsageError("root-of-unity exponent must lie in [0, level)");
    long p = scale.numerator().get_si();
    long r = scale.denominator().get_si();
    CycSeries out(f.denom() * r, f.exact() ? kExactTrunc : f.trunc() * p);
    for (const auto& [k, c] : f.terms()) {
        out.set(k * p, Cyclotomic::zeta_power(root.level, root.power * k) * c);
    }
    return out;
}

inline CycSeries to_cyclotomic(const QSeries& f, unsigned level) {
    CycSeries out(f.denom(), f.trunc());
    for (const auto& [k, c] : f.terms())
        out.set(k, Cyclotomic(level, c));
    return out;
}

// Returns the rational series when every coefficient has vanishing
// z-coordinates.
inline std::optional<QSeries> to_rational(const CycSeries& f) {
    QSeries out(f.denom(), f.trunc());
    for (const auto& [k, c] : f.terms()) {
        auto r = c.as_rational();
        if (!r)
            return std::nullopt;
        out.set(k, *r);
    }
    return out;
}

inline BigInt divisor_power_sum(long n, unsigned power) {
    BigInt s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        s += big_pow(BigInt(d), power);
        if (d != n / d)
            s += big_pow(BigInt(n / d), power);
    }
    return s;
}

// E_4 = 1 + 240 sum sigma_3(n) q^n, E_6 = 1 - 504 sum sigma_5(n) q^n.
inline QSeries eisenstein(int weight, long order) {
    if (order < 1)
        throw UsageError("Eisenstein series needs order >= 1");
    long factor;
    unsigned power;
    if (weight == 4) {
        factor = 240;
        power = 3;
    } else if (weight == 6) {
        factor = -504;
        power = 5;
    } else {
        throw UsageError("Eisenstein weight must be 4 or 6");
    }
    QSeries e(1, order);
    e.set(0, Rational(1));
    for (long n = 1; n < order; ++n)
        e.set(n, Rational(BigInt(factor) * divisor_power_sum(n, power)));
    return e;
}

// Delta = q prod_{n>=1} (1 - q^n)^24, known for exponents < order.
inline QSeries delta(long order) {
    if (order < 2)
        throw UsageError("discriminant series needs order >= 2");
    const long len = order - 1;  // product factor known for exponents < len
    std::vector<BigInt> prod(static_cast<std::size_t>(len));
    prod[0] = 1;
    for (long n = 1; n < len; ++n)
        for (long k = len - 1; k >= n; --k)
            prod[static_cast<std::size_t>(k)] -= prod[static_cast<std::size_t>(k - n)];
    QSeries euler(1, len);
    for (long k = 0; k < len; ++k)
        euler.set(k, Rational(prod[static_cast<std::size_t>(k)]));
    QSeries p24 = series_pow(euler, 24);
    return QSeries::monomial(Rational(1), 1, 1, kExactTrunc) * p24;
}

// j = E_4^3 / Delta, known for exponents < order.
inline QSeries j_series(long order) {
    if (order < 1)
        throw UsageError("j-expansion needs order >= 1");
    QSeries e4 = eisenstein(4, order + 1);
    return series_pow(e4, 3) * series_invert(delta(order + 2));
}

// j = E_6^2 / Delta + 1728; independent route to the same expansion.
inline QSeries j_series_dual(long order) {
    if (order < 1)
        throw UsageError("j-expansion needs order >= 1");
    QSeries e6 = eisenstein(6, order + 1);
    QSeries j = series_pow(e6, 2) * series_invert(delta(order + 2));
    j.add_constant(Rational(1728));
    return j;
}

struct SeriesReport {
    BigInt max_abs_numerator = 0;
    std::optional<Rational> first_nonzero_exponent;
    Rational window_lo;
    Rational window_hi;

    bool vanishes() const { return !first_nonzero_exponent.has_value(); }
};

// Summarizes a series on [lo, trunc).
template <class Ring>
SeriesReport series_report(const Series<Ring>& f, const Rational& lo) {
    SeriesReport r;
    r.window_lo = lo;
    r.window_hi = f.trunc_exponent();
    for (const auto& [k, c] : f.terms()) {
        if (!r.first_nonzero_exponent)
            r.first_nonzero_exponent = Rational(k, f.denom());
        BigInt m = RingTraits<Ring>::max_abs_numerator(c);
        if (m > r.max_abs_numerator)
            r.max_abs_numerator = m;
    }
    return r;
}

} // namespace jchi
