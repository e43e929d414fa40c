#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jchi/arith.hpp"
#include "jchi/diffalg.hpp"
#include "jchi/error.hpp"
#include "jchi/jet.hpp"
#include "jchi/ratfun.hpp"

namespace jchi {

class ParseError : public UsageError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : UsageError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Which identifiers are legal: jet coordinates x, x', x2'', ... or the
// rational-function variable t.
enum class Dialect { jet, rational_function };

struct ExprNode;
using ExprAst = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { literal, variable, neg, add, sub, mul, div, pow, derivative, schwarzian, chi };

    Kind kind = Kind::literal;
    Rational value;           // literal
    std::string name;         // variable spelling without primes
    JetVariable jet;          // variable (jet dialect)
    unsigned exponent = 0;    // pow
    ExprAst lhs, rhs;         // operands; unary nodes use lhs

    static ExprAst make(Kind k, ExprAst a = nullptr, ExprAst b = nullptr) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }
    static ExprAst literal(Rational v) {
        auto n = std::make_shared<ExprNode>();
        n->value = std::move(v);
        return n;
    }
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, Dialect dialect) : text_(text), dialect_(dialect) {}

    ExprAst parse() {
        skip_space();
        ExprAst e = expr();
        skip_space();
        if (pos_ < text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    // expr := term (('+'|'-') term)*
    ExprAst expr() {
        ExprAst e = term();
        while (true) {
            skip_space();
            if (eat('+'))
                e = ExprNode::make(ExprNode::Kind::add, e, term());
            else if (eat_minus())
                e = ExprNode::make(ExprNode::Kind::sub, e, term());
            else
                return e;
        }
    }

    // term := unary (('*'|'/') unary)*
    ExprAst term() {
        ExprAst e = unary();
        while (true) {
            skip_space();
            if (eat('*'))
                e = ExprNode::make(ExprNode::Kind::mul, e, unary());
            else if (eat('/'))
                e = ExprNode::make(ExprNode::Kind::div, e, unary());
            else
                return e;
        }
    }

    // unary := '-'? factor
    ExprAst unary() {
        skip_space();
        if (eat_minus())
            return ExprNode::make(ExprNode::Kind::neg, factor());
        return factor();
    }

    // factor := base ('^' NAT)?
    ExprAst factor() {
        ExprAst b = base();
        skip_space();
        if (!eat('^'))
            return b;
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("exponent must be a nonnegative integer literal");
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 6)
            fail("exponent too large");
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::pow;
        n->lhs = b;
        n->exponent = static_cast<unsigned>(std::stoul(digits));
        return n;
    }

    ExprAst base() {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (eat('(')) {
            ExprAst e = expr();
            skip_space();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    ExprAst number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string whole(text_.substr(start, pos_ - start));
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string frac(text_.substr(fs, pos_ - fs));
            if (frac.empty())
                fail("digits expected after '.'");
            BigInt den = big_pow(BigInt(10), frac.size());
            return ExprNode::literal(Rational(BigInt(whole + frac), den));
        }
        return ExprNode::literal(Rational(BigInt(whole)));
    }

    ExprAst identifier() {
        std::size_t start = pos_, line = line_at(start), col = column_at(start);
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        std::size_t save = pos_;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(' && (name == "d" || name == "S" || name == "chi")) {
            ++pos_;
            ExprAst arg = expr();
            skip_space();
            if (!eat(')'))
                fail("expected ')' closing " + name + "(");
            auto kind = name == "d" ? ExprNode::Kind::derivative
                                    : (name == "S" ? ExprNode::Kind::schwarzian : ExprNode::Kind::chi);
            return ExprNode::make(kind, arg);
        }
        pos_ = save;
        int primes = 0;
        while (pos_ < text_.size() && text_[pos_] == '\'') {
            ++primes;
            ++pos_;
        }
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::variable;
        n->name = name;
        if (dialect_ == Dialect::rational_function) {
            if (name != "t")
                throw ParseError("unknown identifier '" + name + "' (only t is allowed here)", line, col);
            if (primes > 0)
                throw ParseError("prime marks are not allowed on t; use d(...)", line, col);
            return n;
        }
        int coord = 0;
        if (name == "x") {
            coord = 1;
        } else if (name.size() > 1 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos &&
                   name[1] != '0' && name.size() < 6) {
            coord = std::stoi(name.substr(1));
        } else {
            throw ParseError("unknown identifier '" + name + "'", line, col);
        }
        n->jet = JetVariable{coord, primes};
        return n;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_at(pos_), column_at(pos_)); }

    std::size_t line_at(std::size_t p) const {
        std::size_t line = 1;
        for (std::size_t i = 0; i < p && i < text_.size(); ++i)
            if (text_[i] == '\n')
                ++line;
        return line;
    }
    std::size_t column_at(std::size_t p) const {
        std::size_t col = 1;
        for (std::size_t i = 0; i < p && i < text_.size(); ++i)
            col = text_[i] == '\n' ? 1 : col + 1;
        return col;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    // ASCII '-' or U+2212.
    bool eat_minus() {
        if (eat('-'))
            return true;
        if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
            pos_ += 3;
            return true;
        }
        return false;
    }

    std::string_view text_;
    Dialect dialect_;
    std::size_t pos_ = 0;
};

inline int precedence(const ExprNode& n) {
    using K = ExprNode::Kind;
    switch (n.kind) {
    case K::add:
    case K::sub: return 1;
    case K::mul:
    case K::div: return 2;
    case K::neg: return 3;
    case K::pow: return 4;
    case K::literal: return n.value.is_integer() ? 5 : 2;
    default: return 5;
    }
}

inline std::string wrap(const ExprAst& e, int min_prec);

inline std::string print(const ExprAst& e) {
    using K = ExprNode::Kind;
    const ExprNode& n = *e;
    switch (n.kind) {
    case K::literal: return n.value.to_string();
    case K::variable: return n.name + std::string(static_cast<std::size_t>(n.jet.order), '\'');
    case K::neg: return "-" + wrap(n.lhs, 4);
    case K::add: return wrap(n.lhs, 1) + " + " + wrap(n.rhs, 2);
    case K::sub: return wrap(n.lhs, 1) + " - " + wrap(n.rhs, 2);
    case K::mul: return wrap(n.lhs, 2) + "*" + wrap(n.rhs, 3);
    case K::div: return wrap(n.lhs, 2) + "/" + wrap(n.rhs, 3);
    case K::pow: return wrap(n.lhs, 5) + "^" + std::to_string(n.exponent);
    case K::derivative: return "d(" + print(n.lhs) + ")";
    case K::schwarzian: return "S(" + print(n.lhs) + ")";
    case K::chi: return "chi(" + print(n.lhs) + ")";
    }
    return "";
}

inline std::string wrap(const ExprAst& e, int min_prec) {
    std::string s = print(e);
    return precedence(*e) < min_prec ? "(" + s + ")" : s;
}

} // namespace detail

inline ExprAst parse_expression(std::string_view text, Dialect dialect = Dialect::jet) {
    return detail::Parser(text, dialect).parse();
}

inline std::string to_string(const ExprAst& e) { return detail::print(e); }

// Jet-dialect AST as a normalized differential rational function.
inline DiffExpression to_diff_expression(const ExprAst& e) {
    using K = ExprNode::Kind;
    const ExprNode& n = *e;
    switch (n.kind) {
    case K::literal: return DiffExpression(n.value);
    case K::variable:
        if (n.name == "t")
            throw UsageError("t is not a jet variable");
        return DiffExpression(JetPolynomial::variable(n.jet));
    case K::neg: return -to_diff_expression(n.lhs);
    case K::add: return to_diff_expression(n.lhs) + to_diff_expression(n.rhs);
    case K::sub: return to_diff_expression(n.lhs) - to_diff_expression(n.rhs);
    case K::mul: return to_diff_expression(n.lhs) * to_diff_expression(n.rhs);
    case K::div: {
        DiffExpression d = to_diff_expression(n.rhs);
        if (d.is_zero())
            throw DomainError("division by an expression that is identically zero");
        return to_diff_expression(n.lhs) / d;
    }
    case K::pow: return to_diff_expression(n.lhs).pow(n.exponent);
    case K::derivative: return to_diff_expression(n.lhs).derivative();
    case K::schwarzian: return schwarzian(to_diff_expression(n.lhs));
    case K::chi: return chi(to_diff_expression(n.lhs));
    }
    throw UsageError("unhandled expression node");
}

// Rational-function-dialect AST evaluated in Q(t) with d = d/dt.
inline RatFun to_ratfun(const ExprAst& e) {
    using K = ExprNode::Kind;
    const ExprNode& n = *e;
    switch (n.kind) {
    case K::literal: return RatFun(n.value);
    case K::variable:
        if (n.name != "t")
            throw UsageError("only t may appear in a rational function");
        return RatFun::t();
    case K::neg: return -to_ratfun(n.lhs);
    case K::add: return to_ratfun(n.lhs) + to_ratfun(n.rhs);
    case K::sub: return to_ratfun(n.lhs) - to_ratfun(n.rhs);
    case K::mul: return to_ratfun(n.lhs) * to_ratfun(n.rhs);
    case K::div: {
        RatFun d = to_ratfun(n.rhs);
        if (d.is_zero())
            throw DomainError("division by zero");
        return to_ratfun(n.lhs) / d;
    }
    case K::pow: return to_ratfun(n.lhs).pow(n.exponent);
    case K::derivative: return to_ratfun(n.lhs).derivative();
    case K::schwarzian: return schwarzian_of(to_ratfun(n.lhs));
    case K::chi: return chi_of(to_ratfun(n.lhs));
    }
    throw UsageError("unhandled expression node");
}

inline DiffExpression parse_diff_expression(std::string_view text) {
    return to_diff_expression(parse_expression(text, Dialect::jet));
}

inline RatFun parse_ratfun(std::string_view text) {
    return to_ratfun(parse_expression(text, Dialect::rational_function));
}

} // namespace jchi
