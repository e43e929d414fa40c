#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jchi/error.hpp"

namespace jchi {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& n) { return n.get_str(); }

inline BigInt big_pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

// Exact rational number; always stored in lowest terms with a positive
// denominator (gmp canonical form).
class Rational {
public:
    Rational() = default;
    Rational(long n) : value_(n) {}  // NOLINT: implicit integer promotion is intended
    Rational(const BigInt& n) : value_(n) {}  // NOLINT
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw ArithmeticError("rational with zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "p", "-p" and "p/q".
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(BigInt(std::string(text)));
            return Rational(BigInt(std::string(text.substr(0, slash))),
                            BigInt(std::string(text.substr(slash + 1))));
        } catch (const std::invalid_argument&) {
            throw UsageError("malformed rational '" + std::string(text) + "'");
        }
    }

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    const mpq_class& raw() const { return value_; }

    Rational inverse() const {
        if (is_zero())
            throw ArithmeticError("division by zero");
        Rational r;
        mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
        return r;
    }

    Rational pow(long e) const {
        if (e < 0)
            return inverse().pow(-e);
        Rational r;
        mpz_pow_ui(r.value_.get_num_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.value_.get_den_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return r;
    }

    Rational abs() const {
        Rational r;
        r.value_ = ::abs(value_);
        return r;
    }

    std::string to_string() const {
        if (is_integer())
            return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw ArithmeticError("division by zero");
        value_ /= o.value_;
        return *this;
    }

    // acc += a * b without a named temporary at the call site.
    void add_product(const Rational& a, const Rational& b) {
        mpq_class t = a.value_ * b.value_;
        value_ += t;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.value_ = -a.value_;
        return r;
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

enum class ArithOp { add, sub, mul, div };

inline Rational rat_arith(const Rational& a, const Rational& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw UsageError("unknown arithmetic operation");
}

inline bool is_prime(unsigned n) {
    if (n < 2)
        return false;
    for (unsigned p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

// Element a_0 + a_1 z + ... + a_{N-2} z^{N-2} of Q(z), z a primitive N-th
// root of unity, N prime. Default construction yields a level-less zero that
// adopts the level of whatever it is combined with.
class Cyclotomic {
public:
    Cyclotomic() = default;

    Cyclotomic(unsigned level, const Rational& value) : level_(check_level(level)), coords_(level - 1) {
        coords_[0] = value;
    }

    Cyclotomic(unsigned level, std::vector<Rational> coords) : level_(check_level(level)) {
        coords_ = reduce(level_, std::move(coords));
    }

    // z^k reduced.
    static Cyclotomic zeta_power(unsigned level, long k) {
        check_level(level);
        long e = ((k % long(level)) + long(level)) % long(level);
        std::vector<Rational> raw(static_cast<std::size_t>(e) + 1);
        raw[static_cast<std::size_t>(e)] = 1;
        return Cyclotomic(level, std::move(raw));
    }

    unsigned level() const { return level_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero())
                return false;
        return true;
    }

    std::optional<Rational> as_rational() const {
        if (coords_.empty())
            return Rational(0);
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (!coords_[i].is_zero())
                return std::nullopt;
        return coords_[0];
    }

    // Galois conjugate z -> z^j, j coprime to the level.
    Cyclotomic conjugate(unsigned j) const {
        if (level_ == 0)
            return *this;
        if (j % level_ == 0)
            throw UsageError("conjugation exponent must be a unit");
        std::vector<Rational> raw(level_);
        for (std::size_t i = 0; i < coords_.size(); ++i)
            raw[(i * j) % level_] += coords_[i];
        return Cyclotomic(level_, std::move(raw));
    }

    Cyclotomic inverse() const {
        if (is_zero())
            throw ArithmeticError("division by zero in cyclotomic field");
        // a^{-1} = (prod of nontrivial conjugates) / norm(a)
        Cyclotomic partial(level_, Rational(1));
        for (unsigned j = 2; j < level_; ++j)
            partial *= conjugate(j);
        auto norm = (partial * *this).as_rational();
        if (!norm)
            throw ArithmeticError("cyclotomic norm is not rational");
        return partial * norm->inverse();
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        adopt(o);
        if (o.level_ == 0)
            return *this;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] += o.coords_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }
    Cyclotomic& operator*=(const Cyclotomic& o) {
        *this = *this * o;
        return *this;
    }
    Cyclotomic& operator*=(const Rational& r) {
        for (auto& c : coords_)
            c *= r;
        return *this;
    }

    void add_product(const Cyclotomic& a, const Cyclotomic& b) { *this += a * b; }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator-(Cyclotomic a) {
        for (auto& c : a.coords_)
            c = -c;
        return a;
    }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level_ == 0 || b.level_ == 0)
            return Cyclotomic();
        if (a.level_ != b.level_)
            throw UsageError("cyclotomic levels differ");
        std::vector<Rational> raw(a.level_);
        for (std::size_t i = 0; i < a.coords_.size(); ++i) {
            if (a.coords_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < b.coords_.size(); ++j)
                raw[(i + j) % a.level_].add_product(a.coords_[i], b.coords_[j]);
        }
        Cyclotomic r;
        r.level_ = a.level_;
        r.coords_ = reduce(a.level_, std::move(raw));
        return r;
    }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level_ == 0 || b.level_ == 0)
            return a.is_zero() && b.is_zero();
        return a.level_ == b.level_ && a.coords_ == b.coords_;
    }

    std::string to_string() const {
        if (auto r = as_rational())
            return r->to_string();
        std::string out;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i].is_zero())
                continue;
            std::string c = coords_[i].to_string();
            if (!out.empty())
                out += " + ";
            if (i == 0)
                out += c;
            else
                out += (c == "1" ? "" : "(" + c + ")*") + std::string("z") + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out;
    }

private:
    static unsigned check_level(unsigned level) {
        if (!is_prime(level))
            throw UsageError("cyclotomic level must be prime, got " + std::to_string(level));
        return level;
    }

    // Fold powers modulo z^N = 1, then eliminate z^{N-1} with
    // z^{N-1} = -(1 + z + ... + z^{N-2}).
    static std::vector<Rational> reduce(unsigned level, std::vector<Rational> raw) {
        std::vector<Rational> folded(level);
        for (std::size_t i = 0; i < raw.size(); ++i)
            folded[i % level] += raw[i];
        Rational top = folded[level - 1];
        folded.pop_back();
        if (!top.is_zero())
            for (auto& c : folded)
                c -= top;
        return folded;
    }

    void adopt(const Cyclotomic& o) {
        if (level_ == 0 && o.level_ != 0) {
            level_ = o.level_;
            coords_.assign(level_ - 1, Rational(0));
        } else if (o.level_ != 0 && o.level_ != level_) {
            throw UsageError("cyclotomic levels differ");
        }
    }

    unsigned level_ = 0;
    std::vector<Rational> coords_;
};

inline Cyclotomic cyc_mul(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.level() != b.level())
        throw UsageError("cyclotomic levels differ");
    return a * b;
}

inline std::optional<Rational> cyc_is_rational(const Cyclotomic& a) { return a.as_rational(); }

// Uniform access used by the series templates.
template <class Ring>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static Rational one_like(const Rational&) { return Rational(1); }
    static Rational from_rational(const Rational& r, const Rational&) { return r; }
    static BigInt max_abs_numerator(const Rational& r) { return abs(r.numerator()); }
    static std::string to_string(const Rational& r) { return r.to_string(); }
};

template <>
struct RingTraits<Cyclotomic> {
    static Cyclotomic one_like(const Cyclotomic& s) { return Cyclotomic(s.level() ? s.level() : 2, Rational(1)); }
    static Cyclotomic from_rational(const Rational& r, const Cyclotomic& s) {
        return Cyclotomic(s.level() ? s.level() : 2, r);
    }
    static BigInt max_abs_numerator(const Cyclotomic& c) {
        BigInt m = 0;
        for (const auto& x : c.coords())
            if (abs(x.numerator()) > m)
                m = abs(x.numerator());
        return m;
    }
    static std::string to_string(const Cyclotomic& c) { return c.to_string(); }
};

} // namespace jchi
