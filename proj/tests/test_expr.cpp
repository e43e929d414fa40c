#include <gtest/gtest.h>

#include "jchi/expr.hpp"
#include "jchi/serialize.hpp"

using namespace jchi;

namespace {

Rational eval_const(const std::string& s) {
    DiffExpression e = parse_diff_expression(s);
    EXPECT_TRUE(e.is_constant()) << s;
    return e.num().constant_value();
}

JetPolynomial x(int k) { return JetPolynomial::var(1, k); }

} // namespace

TEST(Parser, Precedence) {
    EXPECT_EQ(eval_const("1 + 2*3"), Rational(7));
    EXPECT_EQ(eval_const("(1 + 2)*3"), Rational(9));
    EXPECT_EQ(eval_const("-2^2"), Rational(-4));
    EXPECT_EQ(eval_const("(-2)^2"), Rational(4));
    EXPECT_EQ(eval_const("2*-3"), Rational(-6));
    EXPECT_EQ(eval_const("8/4/2"), Rational(1));
    EXPECT_EQ(eval_const("1-2-3"), Rational(-4));
    EXPECT_EQ(eval_const("2^0"), Rational(1));
    EXPECT_EQ(eval_const("1.25 + 3/4"), Rational(2));
    EXPECT_EQ(eval_const("5 \xE2\x88\x92 7"), Rational(-2));
}

TEST(Parser, Variables) {
    ExprAst a = parse_expression("x''");
    ASSERT_EQ(a->kind, ExprNode::Kind::variable);
    EXPECT_EQ(a->jet, (JetVariable{1, 2}));
    ExprAst b = parse_expression("x2'");
    EXPECT_EQ(b->jet, (JetVariable{2, 1}));
    EXPECT_EQ(parse_diff_expression("x1'''"), DiffExpression(x(3)));
}

TEST(Parser, DerivativeExpands) {
    EXPECT_EQ(parse_diff_expression("d(x*x')"), DiffExpression(x(1).pow(2) + x(0) * x(2)));
    EXPECT_EQ(parse_diff_expression("d(d(d(x^2)))"),
              DiffExpression(JetPolynomial(6) * x(1) * x(2) + JetPolynomial(2) * x(0) * x(3)));
}

TEST(Parser, ChiFormula) {
    EXPECT_EQ(parse_diff_expression("S(x) + (x^2 - 1968*x + 2654208)/(2*x^2*(x-1728)^2) * d(x)^2"), chi_expr());
    EXPECT_EQ(parse_diff_expression("chi(x)"), chi_expr());
    EXPECT_EQ(parse_diff_expression("S(x)"), schwarzian_expr());
    EXPECT_EQ(parse_diff_expression("(x'*x''' - 3/2*x''^2)/x'^2"), schwarzian_expr());
}

TEST(Parser, SyntaxErrorsCarryPosition) {
    try {
        parse_expression("x +\n  * 2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
    try {
        parse_expression("x + y");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 5u);
        EXPECT_NE(std::string(e.what()).find("unknown identifier"), std::string::npos);
    }
    for (const char* bad : {"", "(", "x)", "x^-1", "x^y", "2^3^2", "d x", "1 +", "x^1.5", "S()", "3..2"})
        EXPECT_THROW(parse_expression(bad), ParseError) << bad;
}

TEST(Parser, DivisionByZero) {
    EXPECT_THROW(parse_diff_expression("x/0"), DomainError);
    EXPECT_THROW(parse_diff_expression("1/(x - x)"), DomainError);
    EXPECT_THROW(parse_ratfun("1/(t - t)"), DomainError);
}

TEST(Parser, RationalFunctionDialect) {
    RatFun f = parse_ratfun("(2*t+3)/(5*t+7)");
    EXPECT_EQ(f, MoebiusMap(Rational(2), Rational(3), Rational(5), Rational(7)).as_ratfun());
    EXPECT_EQ(parse_ratfun("d(t^3)"), RatFun(3) * RatFun::t() * RatFun::t());
    EXPECT_TRUE(parse_ratfun("S((t+1)/(t-1))").is_zero());
    EXPECT_THROW(parse_ratfun("x + 1"), ParseError);
    EXPECT_THROW(parse_ratfun("t'"), ParseError);
    EXPECT_THROW(parse_diff_expression("t"), ParseError);
}

TEST(Printer, RoundTripCorpus) {
    const std::vector<std::string> corpus = {
        "x",
        "x'",
        "x'''",
        "-x",
        "-x^2",
        "(-x)^2",
        "x - (x' - 1)",
        "x/(x'*x'')",
        "(x + 1)/(x - 1)",
        "2*x^3 - 3/4*x'",
        "1/2 - x",
        "(3/2)^2*x",
        "x^2*x'^3 - x''",
        "d(x)",
        "d(x^3)",
        "d(d(x*x'))",
        "S(x)",
        "S(x^2)",
        "S((x + 1)/(x - 2))",
        "chi(x)",
        "chi(x^2)",
        "S(x) + (x^2 - 1968*x + 2654208)/(2*x^2*(x-1728)^2) * d(x)^2",
        "x2 + x2' * x",
        "-(x - x')",
        "x*-x'",
        "x - -x'",
        "x/(3/2)",
        "1.5*x",
        "(x^2)^3",
        "d(x/x') - x' * 7",
    };
    ASSERT_EQ(corpus.size(), 30u);
    for (const auto& text : corpus) {
        ExprAst a = parse_expression(text);
        std::string printed = to_string(a);
        ExprAst b = parse_expression(printed);
        EXPECT_EQ(to_string(b), printed) << text;
        EXPECT_EQ(to_diff_expression(a), to_diff_expression(b)) << text << " -> " << printed;
        // the normal-form text re-parses to the same expression
        DiffExpression e = to_diff_expression(a);
        EXPECT_EQ(parse_diff_expression(to_text(e)), e) << to_text(e);
    }
}

TEST(Serialize, SeriesText) {
    EXPECT_EQ(to_text(j_series(2)), "q^-1 + 744 + 196884*q");
    EXPECT_EQ(to_text(QSeries(1, 7)), "0 (valid to q^7)");
    QSeries f = QSeries::monomial(Rational(-1, 3), 1, 2, 9);
    f.set(4, Rational(1));
    EXPECT_EQ(to_text(f), "-1/3*q^(1/2) + q^2");
}

TEST(Serialize, SeriesJsonRoundTrip) {
    QSeries j = j_series(8);
    Json doc = to_json(j);
    const std::string head = R"({"denom":1,"terms":[[-1,"1"],[0,"744"],)";
    EXPECT_EQ(doc.dump().substr(0, head.size()), head);
    EXPECT_EQ(series_from_json(doc), j);
    QSeries g = QSeries::monomial(Rational(5, 7), -3, 4, 11);
    EXPECT_EQ(series_from_json(Json::parse(to_json(g).dump())), g);
    EXPECT_THROW(series_from_json(Json::parse(R"({"denom":1})")), UsageError);
}

TEST(Serialize, PolynomialJsonRoundTrip) {
    for (const JetPolynomial& p : {fiber_polynomial(Rational(0)), fiber_polynomial_symbolic(), x(0) * JetPolynomial::var(2, 1)})
        EXPECT_EQ(jet_polynomial_from_json(Json::parse(to_json(p).dump())), p);
}

TEST(Serialize, PolynomialText) {
    EXPECT_EQ(to_text(x(1) * x(3) - JetPolynomial(Rational(3, 2)) * x(2).pow(2)), "x'*x''' - 3/2*x''^2");
    EXPECT_EQ(to_text(JetPolynomial()), "0");
    EXPECT_EQ(to_text(schwarzian_expr()), "(x'*x''' - 3/2*x''^2)/(x'^2)");
}

TEST(Serialize, BoundJson) {
    EXPECT_EQ(to_json(BoundResult{BigInt(12), {"a", "b"}}).dump(), R"({"trace":["a","b"],"value":"12"})");
}

TEST(Serialize, ModularText) {
    ModularPolynomial p(2, {{{3, 0}, BigInt(1)}, {{1, 1}, BigInt(-5)}, {{0, 0}, BigInt(7)}});
    EXPECT_EQ(to_text(p), "\xCE\xA6_2(X,Y) = X^3 - 5*X*Y + Y^3 + 7");
    EXPECT_EQ(to_json(p).dump(), R"({"coeffs":[[3,0,"1"],[1,1,"-5"],[0,0,"7"]],"level":2})");
}
