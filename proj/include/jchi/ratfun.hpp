#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jchi/arith.hpp"
#include "jchi/error.hpp"

namespace jchi {

// Dense univariate polynomial over Q in t; coefficient i multiplies t^i.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rational& c) {  // NOLINT
        if (!c.is_zero())
            coeffs_.push_back(c);
    }
    UPoly(long c) : UPoly(Rational(c)) {}  // NOLINT
    explicit UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UPoly t() { return UPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    const Rational& leading() const {
        if (coeffs_.empty())
            throw DomainError("zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) { return *this += -o; }
    UPoly& operator*=(const Rational& r) {
        for (auto& c : coeffs_)
            c *= r;
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(UPoly a) { return a *= Rational(-1); }
    friend UPoly operator*(UPoly a, const Rational& r) { return a *= r; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero())
            return UPoly();
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
        return UPoly(std::move(out));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

    // Euclidean division: *this = q * b + r with deg r < deg b.
    std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
        if (b.is_zero())
            throw ArithmeticError("polynomial division by zero");
        UPoly r = *this;
        std::vector<Rational> q(coeffs_.size() >= b.coeffs_.size() ? coeffs_.size() - b.coeffs_.size() + 1 : 0);
        const Rational inv = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            Rational f = r.leading() * inv;
            q[shift] = f;
            for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
                r.coeffs_[i + shift] -= f * b.coeffs_[i];
            r.trim();
        }
        return {UPoly(std::move(q)), r};
    }

    UPoly monic() const { return is_zero() ? *this : *this * leading().inverse(); }

    UPoly derivative() const {
        std::vector<Rational> out;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            out.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
        return UPoly(std::move(out));
    }

    Rational evaluate(const Rational& x) const {
        Rational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

namespace detail {

using IntPoly = std::vector<BigInt>;  // low degree first, nonzero leading term

// Denominators cleared, content removed, leading coefficient positive.
inline IntPoly primitive_part(const UPoly& p) {
    BigInt l = 1, g = 0;
    for (const auto& c : p.coeffs())
        l = lcm(l, c.denominator());
    IntPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        out.push_back(c.numerator() * (l / c.denominator()));
        g = gcd(g, out.back());
    }
    if (out.back() < 0)
        g = -g;
    for (auto& c : out)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return out;
}

inline void make_primitive(IntPoly& p) {
    BigInt g = 0;
    for (const auto& c : p) {
        g = gcd(g, c);
        if (g == 1)
            break;
    }
    if (p.back() < 0)
        g = -g;
    if (g != 1)
        for (auto& c : p)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// lc(b)^k a mod b, over Z.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
    const BigInt& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const BigInt la = a.back();
        for (auto& c : a)
            c *= lb;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= la * b[i];
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    return a;
}

inline constexpr std::uint64_t kGcdPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kGcdPrime);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1)
            r = mulmod(r, a);
    return r;
}

inline std::vector<std::uint64_t> reduce_mod(const IntPoly& p) {
    std::vector<std::uint64_t> out;
    out.reserve(p.size());
    BigInt m = static_cast<unsigned long>(kGcdPrime), r;
    for (const auto& c : p) {
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        out.push_back(r.get_ui());
    }
    return out;
}

// Degree of gcd(a mod p, b mod p); an upper bound on the true degree when p
// divides neither leading coefficient.
inline int gcd_degree_mod_p(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        const std::uint64_t inv = powmod(b.back(), kGcdPrime - 2);
        while (a.size() >= b.size()) {
            const std::size_t shift = a.size() - b.size();
            const std::uint64_t f = mulmod(a.back(), inv);
            for (std::size_t i = 0; i < b.size(); ++i)
                a[i + shift] = (a[i + shift] + kGcdPrime - mulmod(f, b[i])) % kGcdPrime;
            trim(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

} // namespace detail

// Monic gcd over Q. A single-prime image settles the common coprime case;
// otherwise a primitive pseudo-remainder sequence over Z.
inline UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return UPoly(1);
    detail::IntPoly x = detail::primitive_part(a), y = detail::primitive_part(b);
    auto xm = detail::reduce_mod(x), ym = detail::reduce_mod(y);
    if (xm.back() != 0 && ym.back() != 0 && detail::gcd_degree_mod_p(xm, ym) == 0)
        return UPoly(1);
    if (x.size() < y.size())
        std::swap(x, y);
    while (!y.empty()) {
        detail::IntPoly r = detail::pseudo_remainder(x, y);
        if (!r.empty())
            detail::make_primitive(r);
        x = std::move(y);
        y = std::move(r);
    }
    std::vector<Rational> c;
    c.reserve(x.size());
    for (const auto& v : x)
        c.emplace_back(v);
    return UPoly(std::move(c)).monic();
}

inline std::string UPoly::to_string(const std::string& var) const {
    if (is_zero())
        return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero())
            continue;
        bool neg = c.sign() < 0;
        Rational a = c.abs();
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (mono.empty())
            out += a.to_string();
        else if (a == Rational(1))
            out += mono;
        else
            out += a.to_string() + "*" + mono;
    }
    return out;
}

// Rational function over Q in t, gcd-reduced with monic denominator.
class RatFun {
public:
    RatFun() : den_(1) {}
    RatFun(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RatFun(long c) : RatFun(Rational(c)) {}  // NOLINT
    RatFun(UPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT
    RatFun(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFun t() { return RatFun(UPoly::t()); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RatFun derivative() const {
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RatFun inverse() const {
        if (is_zero())
            throw ArithmeticError("division by the zero rational function");
        return RatFun(den_, num_);
    }

    RatFun pow(unsigned e) const {
        RatFun r(1), b = *this;
        while (e) {
            if (e & 1u)
                r = r * b;
            e >>= 1u;
            if (e)
                b = b * b;
        }
        return r;
    }

    // this(g(t)).
    RatFun compose(const RatFun& g) const {
        return horner(num_, g) / horner(den_, g);
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero())
            throw ArithmeticError("division by the zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string to_string() const {
        if (den_ == UPoly(1))
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    static RatFun horner(const UPoly& p, const RatFun& g) {
        RatFun acc;
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
            acc = acc * g + RatFun(*it);
        return acc;
    }

    void normalize() {
        if (den_.is_zero())
            throw ArithmeticError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly(1);
            return;
        }
        UPoly g = upoly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        Rational lc = den_.leading();
        num_ *= lc.inverse();
        den_ *= lc.inverse();
    }

    UPoly num_;
    UPoly den_;
};

// t -> (a t + b)/(c t + d), ad - bc != 0.
struct MoebiusMap {
    Rational a, b, c, d;

    MoebiusMap(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if ((a * d - b * c).is_zero())
            throw DomainError("Moebius map must have nonzero determinant");
    }

    RatFun as_ratfun() const { return RatFun(UPoly(std::vector<Rational>{b, a}), UPoly(std::vector<Rational>{d, c})); }
};

} // namespace jchi
