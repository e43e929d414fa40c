#include <gtest/gtest.h>

#include "jchi/modular.hpp"

using namespace jchi;

namespace {

const ModularPolynomial& phi(unsigned level) {
    static std::map<unsigned, ModularPolynomial> cache;
    auto it = cache.find(level);
    if (it == cache.end())
        it = cache.emplace(level, modular_polynomial(level)).first;
    return it->second;
}

} // namespace

TEST(ModularPolynomial, LevelTwoShape) {
    const auto& p = phi(2);
    EXPECT_EQ(p.degree(), 3u);
    EXPECT_EQ(p.coeff(3, 0), 1);
    EXPECT_EQ(p.coeff(0, 3), 1);
    EXPECT_EQ(p.coeff(3, 3), 0);
    EXPECT_EQ(p.coeff(2, 2), -1);
    for (const auto& [ab, c] : p.expanded()) {
        EXPECT_LE(ab.first, 3u);
        EXPECT_LE(ab.second, 3u);
    }
}

TEST(ModularPolynomial, LevelTwoClassicalTable) {
    // cross-check fixture only; the implementation never reads it
    const auto& p = phi(2);
    EXPECT_EQ(p.coeff(2, 1), 1488);
    EXPECT_EQ(p.coeff(2, 0), -162000);
    EXPECT_EQ(p.coeff(1, 1), 40773375);
    EXPECT_EQ(p.coeff(1, 0), BigInt("8748000000"));
    EXPECT_EQ(p.coeff(0, 0), BigInt("-157464000000000"));
}

TEST(ModularPolynomial, SymmetricAndMonic) {
    for (unsigned n : {2u, 3u}) {
        const auto& p = phi(n);
        for (unsigned a = 0; a <= n + 1; ++a)
            for (unsigned b = 0; b <= n + 1; ++b)
                EXPECT_EQ(p.coeff(a, b), p.coeff(b, a));
        EXPECT_EQ(p.coeff(n + 1, 0), 1);
        EXPECT_EQ(p.coeff(n + 1, n + 1), 0);
        for (unsigned b = 1; b <= n + 1; ++b)
            EXPECT_EQ(p.coeff(n + 1, b), 0) << "X^" << n + 1 << " Y^" << b;
    }
}

TEST(ModularPolynomial, HeckeVanishing) {
    for (unsigned n : {2u, 3u}) {
        SeriesReport r = verify_hecke(phi(n), 20);
        EXPECT_TRUE(r.vanishes()) << n;
        EXPECT_LT(r.window_lo, Rational(0));
        EXPECT_GT(r.window_hi, Rational(0));
    }
}

TEST(ModularPolynomial, HeckeDetectsPerturbation) {
    ModularPolynomial p = phi(2);
    p.add_to_coeff(1, 0, 1);
    EXPECT_FALSE(verify_hecke(p, 20).vanishes());
}

TEST(ModularPolynomial, Kronecker) {
    EXPECT_TRUE(kronecker_check(phi(2)));
    EXPECT_TRUE(kronecker_check(phi(3)));
    ModularPolynomial bad = phi(2);
    bad.add_to_coeff(1, 1, 1);
    EXPECT_FALSE(kronecker_check(bad));
}

TEST(ModularPolynomial, LevelFive) {
    const auto& p = phi(5);
    EXPECT_EQ(p.coeff(6, 0), 1);
    EXPECT_EQ(p.coeff(5, 5), -1);
    EXPECT_EQ(p.coeff(0, 0), BigInt("141359947154721358697753474691071362751004672000"));
    EXPECT_TRUE(kronecker_check(p));
    EXPECT_TRUE(verify_hecke(p, 40).vanishes());
}

TEST(ModularPolynomial, ExplicitPrecisionAgrees) {
    EXPECT_EQ(modular_polynomial(2, 40), phi(2));
    EXPECT_EQ(modular_polynomial(3, 30), phi(3));
}

TEST(ModularPolynomial, Errors) {
    EXPECT_THROW(modular_polynomial(4), UsageError);
    EXPECT_THROW(modular_polynomial(7), UsageError);
    EXPECT_THROW(modular_polynomial(2, 4), PrecisionError);
    EXPECT_THROW(ModularPolynomial(2, {{{0, 1}, BigInt(1)}}), UsageError);
}

TEST(ModularPolynomial, TooLowPrecisionNeverAnswers) {
    // every window either reproduces the polynomial or raises a precision error
    for (long w = 5; w <= 12; ++w) {
        try {
            EXPECT_EQ(modular_polynomial(2, w), phi(2)) << w;
        } catch (const PrecisionError&) {
        }
    }
}

TEST(ReduceToJ, Examples) {
    QSeries j = j_series(20);
    auto p = reduce_to_j(j, j);
    EXPECT_EQ(p, (std::vector<BigInt>{0, 1}));
    auto one = reduce_to_j(QSeries::constant(Rational(1)).truncated(10), j);
    EXPECT_EQ(one, (std::vector<BigInt>{1}));
    QSeries s = j * j - j * Rational(1488);
    EXPECT_EQ(reduce_to_j(s, j), (std::vector<BigInt>{0, -1488, 1}));
}

TEST(ReduceToJ, NonModularRemainderIsPrecisionError) {
    QSeries j = j_series(20);
    QSeries s = j;
    s.add_to(3, Rational(1));
    EXPECT_THROW(reduce_to_j(s, j), PrecisionError);
    QSeries frac = j;
    frac.add_to(-1, Rational(1, 2));
    EXPECT_THROW(reduce_to_j(frac, j), PrecisionError);
}

TEST(Evaluate, MatchesHandExpansion) {
    ModularPolynomial p(2, {{{1, 0}, BigInt(2)}, {{1, 1}, BigInt(3)}});
    QSeries x = QSeries::monomial(Rational(1), 1, 1, 10);
    QSeries y = QSeries::constant(Rational(5)).truncated(10);
    // 2x + 2y + 3xy at x = q, y = 5
    QSeries v = evaluate(p, x, y);
    EXPECT_EQ(v.coeff(0), Rational(10));
    EXPECT_EQ(v.coeff(1), Rational(17));
}
