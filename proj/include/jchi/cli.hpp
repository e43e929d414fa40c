#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jchi/bounds.hpp"
#include "jchi/diffalg.hpp"
#include "jchi/error.hpp"
#include "jchi/expr.hpp"
#include "jchi/modular.hpp"
#include "jchi/qseries.hpp"
#include "jchi/serialize.hpp"

namespace jchi {

enum ExitCode : int { kExitOk = 0, kExitVerification = 1, kExitUsage = 2, kExitPrecision = 3 };

struct CommandOutcome {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

struct CliContext {
    // Source of j for verify-chi; tests swap in a corrupted series.
    std::function<QSeries(long)> j_provider = [](long order) { return j_series(order); };
    // Raw value of JCHI_PRECISION, if set.
    std::optional<std::string> precision_env;
};

inline constexpr long kMaxSeriesOrder = 10000;
inline constexpr long kMaxModularPrecision = 400;
inline constexpr int kMaxFiberOrder = 3;

namespace detail {

inline std::string error_line(const std::string& code, const std::string& message) {
    return Json{{"code", code}, {"message", message}}.dump() + "\n";
}

inline long parse_precision_env(const std::string& raw) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(raw, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != raw.size() || raw.empty() || v <= 0)
        throw UsageError("JCHI_PRECISION must be a positive integer, got '" + raw + "'");
    return v;
}

inline void check_order(long order, long max, const char* what) {
    if (order <= 0)
        throw UsageError(std::string(what) + " must be positive");
    if (order > max)
        throw UsageError(std::string(what) + " " + std::to_string(order) + " exceeds the supported maximum " +
                         std::to_string(max));
}

inline void check_fiber_order(const DiffExpression& e) {
    if (max_order(e) > kMaxFiberOrder)
        throw UsageError("derivative order " + std::to_string(max_order(e)) + " exceeds 3 in a fiber context");
}

inline std::string window_text(const SeriesReport& r) {
    return "[" + exponent_text(r.window_lo) + ", " + exponent_text(r.window_hi) + ")";
}

struct Emitter {
    bool json = false;
    CommandOutcome outcome;

    void emit(const Json& j, const std::string& text) { outcome.out += (json ? j.dump() : text) + "\n"; }
};

} // namespace detail

// argv without the program name.
inline CommandOutcome run(const std::vector<std::string>& args, const CliContext& ctx = {}) {
    CLI::App app{"Exact j-function, Schwarzian and modular polynomial toolkit", "jchi"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::string out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "Write the result to PATH instead of stdout");

    std::optional<long> order;
    std::optional<long> level_precision;
    bool dual = false, trace = false;
    std::string expr_text = "x", at_text, param;
    unsigned level = 0;
    unsigned long deg_x = 0, dim = 0, jet_order = 0, deg_s = 0, n = 0, deg_v = 0;

    auto* j_expand = app.add_subcommand("j-expand", "q-expansion of j");
    j_expand->add_option("--order", order, "Exclusive exponent bound (default 10)");
    j_expand->add_flag("--dual", dual, "Use E6^2/Delta + 1728 instead of E4^3/Delta");

    auto* verify_chi_cmd = app.add_subcommand("verify-chi", "Check chi(j) = 0 on the q-expansion");
    verify_chi_cmd->add_option("--order", order, "Order of the j-expansion (default 40)");

    auto* schwarzian_cmd = app.add_subcommand("schwarzian", "Schwarzian derivative S(E)");
    auto* chi_cmd = app.add_subcommand("chi", "chi(E) = S(E) + R_j(E) E'^2");
    for (auto* c : {schwarzian_cmd, chi_cmd}) {
        c->add_option("--expr", expr_text, "Jet expression in x (default x)");
        c->add_option("--at", at_text, "Rational function of t to substitute for x");
    }

    auto* algebraize_cmd = app.add_subcommand("algebraize", "Cleared polynomial of E = a");
    algebraize_cmd->add_option("--expr", expr_text, "Jet expression")->required();
    algebraize_cmd->add_option("--param", param, "Fibre value: a rational number or a parameter name");

    auto* modpoly_cmd = app.add_subcommand("modpoly", "Modular polynomial Phi_N");
    modpoly_cmd->add_option("--level", level, "N in {2, 3, 5}")->required();
    modpoly_cmd->add_option("--order", level_precision, "q-exponent window past the deepest pole");

    auto* hecke_cmd = app.add_subcommand("verify-hecke", "Check Phi_N(j(q), j(q^N)) = 0");
    hecke_cmd->add_option("--level", level, "N in {2, 3, 5}")->required();
    hecke_cmd->add_option("--order", order, "Order of the j-expansion (default 20)");

    auto* bound_cmd = app.add_subcommand("bound", "Degree bound deg(X)^(l 2^(ml)) deg(S)^(2^(ml)-1)");
    bound_cmd->add_option("--deg-x", deg_x, "deg X")->required();
    bound_cmd->add_option("--dim", dim, "dim X")->required();
    bound_cmd->add_option("--order", jet_order, "Prolongation order l")->required();
    bound_cmd->add_option("--deg-s", deg_s, "deg S")->required();
    bound_cmd->add_flag("--trace", trace, "Print the derivation before the value");

    auto* xi_cmd = app.add_subcommand("xi-degree", "Degree 6^n of the product of chi-fibres");
    xi_cmd->add_option("--n", n, "Number of coordinates")->required();

    auto* iso_cmd = app.add_subcommand("isogeny-bound", "Bound (6^n deg V)^7 for isogeny-closure intersections");
    iso_cmd->add_option("--n", n, "Number of coordinates")->required();
    iso_cmd->add_option("--deg-v", deg_v, "deg V")->required();
    iso_cmd->add_flag("--trace", trace, "Print the derivation before the value");

    auto* auto_cmd = app.add_subcommand("auto-example", "Worked bound 36^7 for the automorphic example");

    CommandOutcome result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kExitUsage;
        result.err = detail::error_line("usage", e.what());
        return result;
    }

    detail::Emitter em;
    em.json = format == "json";
    std::string failure;

    try {
        std::optional<long> env_order;
        if (ctx.precision_env)
            env_order = detail::parse_precision_env(*ctx.precision_env);
        auto order_or = [&](long fallback) { return order.value_or(env_order.value_or(fallback)); };

        if (j_expand->parsed()) {
            const long o = order_or(10);
            detail::check_order(o, kMaxSeriesOrder, "order");
            const QSeries j = dual ? j_series_dual(o) : j_series(o);
            em.emit(to_json(j), to_text(j));
        } else if (verify_chi_cmd->parsed()) {
            const long o = order_or(40);
            detail::check_order(o, kMaxSeriesOrder, "order");
            const SeriesReport r = verify_chi(ctx.j_provider(o));
            Json j = to_json(r);
            j["order"] = o;
            if (r.vanishes()) {
                em.emit(j, "chi(j) = 0 on " + detail::window_text(r));
            } else {
                em.emit(j, "chi(j) != 0: first nonzero coefficient at " + exponent_text(*r.first_nonzero_exponent));
                failure = "cleared chi-equation does not vanish at j";
            }
        } else if (schwarzian_cmd->parsed() || chi_cmd->parsed()) {
            const bool is_chi = chi_cmd->parsed();
            const DiffExpression e = parse_diff_expression(expr_text);
            const DiffExpression value = is_chi ? chi(e) : schwarzian(e);
            if (is_chi)
                detail::check_fiber_order(value);
            if (at_text.empty()) {
                em.emit(Json{{"num", to_json(value.num())}, {"den", to_json(value.den())}, {"text", to_text(value)}},
                        to_text(value));
            } else {
                const RatFun f = parse_ratfun(at_text);
                const RatFun r = eval_ratfun(value, f);
                em.emit(Json{{"at", f.to_string()}, {"value", r.to_string()}}, r.to_string());
            }
        } else if (algebraize_cmd->parsed()) {
            const DiffExpression e = parse_diff_expression(expr_text);
            detail::check_fiber_order(e);
            JetPolynomial p;
            std::string param_name = "a";
            if (param.empty()) {
                p = algebraize(e, false);
            } else {
                bool numeric = param.find_first_not_of("0123456789-/+") == std::string::npos;
                if (numeric) {
                    p = algebraize(e - DiffExpression(Rational::parse(param)), false);
                } else {
                    if (param.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_") !=
                            std::string::npos ||
                        param == "x" || param == "t")
                        throw UsageError("--param must be a rational number or a letter name other than x, t");
                    param_name = param;
                    p = algebraize(e, true);
                }
            }
            if (p.is_zero())
                throw DomainError("expression is constant; nothing to algebraize");
            const unsigned deg = total_degree(p);
            const bool sqfree = is_squarefree(p);
            Json j{{"polynomial", to_json(p)},
                   {"text", to_text(p, param_name)},
                   {"total_degree", deg},
                   {"squarefree", sqfree}};
            em.emit(j, to_text(p, param_name) + "\ntotal degree: " + std::to_string(deg) +
                           "\nsquarefree: " + (sqfree ? "yes" : "no"));
        } else if (modpoly_cmd->parsed()) {
            check_supported_level(level);
            std::optional<long> prec = level_precision ? level_precision : env_order;
            if (prec)
                detail::check_order(*prec, kMaxModularPrecision, "precision");
            const ModularPolynomial phi = modular_polynomial(level, prec);
            em.emit(to_json(phi), to_text(phi));
        } else if (hecke_cmd->parsed()) {
            check_supported_level(level);
            const long o = order_or(20);
            detail::check_order(o, kMaxSeriesOrder / 10, "order");
            const SeriesReport r = verify_hecke(level, o);
            Json j = to_json(r);
            j["level"] = level;
            j["order"] = o;
            const std::string name = "Phi_" + std::to_string(level) + "(j(q), j(q^" + std::to_string(level) + "))";
            if (r.vanishes()) {
                em.emit(j, name + " = 0 on " + detail::window_text(r));
            } else {
                em.emit(j, name + " != 0: first nonzero coefficient at " + exponent_text(*r.first_nonzero_exponent));
                failure = "Hecke relation fails";
            }
        } else if (bound_cmd->parsed() || iso_cmd->parsed() || auto_cmd->parsed()) {
            BoundResult r = bound_cmd->parsed() ? hp_bound({deg_x, dim, jet_order, deg_s})
                            : iso_cmd->parsed() ? isogeny_closure_bound(n, deg_v)
                                                : automorphism_example();
            std::string text;
            if (trace || auto_cmd->parsed())
                for (const auto& line : r.trace)
                    text += line + "\n";
            em.emit(to_json(r), text + r.value.get_str());
        } else if (xi_cmd->parsed()) {
            const BigInt d = xi_degree(n);
            em.emit(Json{{"n", n}, {"value", d.get_str()}}, d.get_str());
        }
    } catch (const PrecisionError& e) {
        result.exit_code = kExitPrecision;
        result.err = detail::error_line("precision", e.what());
        return result;
    } catch (const ParseError& e) {
        result.exit_code = kExitUsage;
        result.err = detail::error_line("parse", e.what());
        return result;
    } catch (const UsageError& e) {
        result.exit_code = kExitUsage;
        result.err = detail::error_line("usage", e.what());
        return result;
    } catch (const DomainError& e) {
        result.exit_code = kExitUsage;
        result.err = detail::error_line("domain", e.what());
        return result;
    } catch (const ArithmeticError& e) {
        result.exit_code = kExitUsage;
        result.err = detail::error_line("arithmetic", e.what());
        return result;
    } catch (const std::exception& e) {
        result.exit_code = kExitVerification;
        result.err = detail::error_line("internal", e.what());
        return result;
    }

    result = std::move(em.outcome);
    if (!failure.empty()) {
        result.exit_code = kExitVerification;
        result.err = detail::error_line("verification_failed", failure);
    }
    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        file << result.out;
        if (!file) {
            result.exit_code = kExitUsage;
            result.err = detail::error_line("io", "cannot write " + out_path);
        }
        result.out.clear();
    }
    return result;
}

} // namespace jchi
