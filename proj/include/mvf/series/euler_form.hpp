#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvf/arith/mult_fn.hpp"
#include "mvf/series/power_series.hpp"

namespace mvf {

inline constexpr std::size_t default_series_order = 24;

/// Local Euler factor F_p(X) = sum_k f(p^k) X^k, X standing for p^-s.
inline PowerSeriesQ local_series(const LocalRule& rule, std::size_t order) {
    if (order < 2) throw std::invalid_argument("local_series: order must be >= 2");
    std::vector<Rational> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) c[k] = rule.value(static_cast<unsigned>(k));
    if (c[0] != 1) throw std::invalid_argument("local_series: f(1) must be 1");
    return PowerSeriesQ(std::move(c));
}

inline PowerSeriesQ local_series(MultFn fn, std::size_t order) { return local_series(rule_of(fn), order); }

/// F(s) = zeta(s)^a zeta(2s)^b exp(sum_{n>=3} g_n P(ns)).
///
/// Per prime: ln F_p(X) = a(-ln(1-X)) + b(-ln(1-X^2)) + sum_n g_n X^n, with
/// a and b fixed by requiring g_1 = g_2 = 0.
struct EulerForm {
    std::string name;
    Rational a;
    Rational b;
    std::vector<Rational> g;  ///< g[n] for n = 0..order; g[0..2] are zero

    std::size_t order() const { return g.size() - 1; }
    const Rational& g_at(std::size_t n) const {
        if (n >= g.size()) throw std::out_of_range("EulerForm: g index beyond truncation order");
        return g[n];
    }
};

inline EulerForm euler_form(const LocalRule& rule, std::size_t order = default_series_order) {
    if (order < 3) throw std::invalid_argument("euler_form: order must be >= 3");
    const auto logs = series_log(local_series(rule, order));
    EulerForm form;
    form.name = rule.name;
    form.a = logs[1];
    form.b = logs[2] - form.a / 2;
    auto rest = logs - form.a * neg_log_one_minus(order, 1) - form.b * neg_log_one_minus(order, 2);
    form.g = rest.coeffs();
    if (form.g[1] != 0 || form.g[2] != 0) throw std::logic_error("euler_form: normalization failed");
    return form;
}

inline EulerForm euler_form(MultFn fn, std::size_t order = default_series_order) {
    return euler_form(rule_of(fn), order);
}

/// g_n of ln G_p; zero for n in {1, 2}.
inline Rational g_coefficient(MultFn fn, std::size_t n) {
    if (n < 1) throw std::invalid_argument("g_coefficient: n must be >= 1");
    if (n <= 2) return Rational(0);
    return euler_form(fn, n).g_at(n);
}

/// Piecewise closed forms for the two omega-type weights:
///   2^-omega: g_n = (1/n)(1/2 - 2^-n) for odd n, (1/n)(1/4 - 2^-n) for even n;
///   2^-Omega: the same with opposite sign.
inline std::optional<Rational> closed_form_g(MultFn fn, std::size_t n) {
    if (fn != MultFn::InvTwoOmega && fn != MultFn::InvTwoBigOmega) return std::nullopt;
    if (n < 1) return std::nullopt;
    Rational two_pow(1);
    mpz_mul_2exp(two_pow.get_den_mpz_t(), two_pow.get_den_mpz_t(), n);
    Rational head = (n % 2 == 1) ? Rational(1, 2) : Rational(1, 4);
    Rational g = (head - two_pow) / Rational(static_cast<long>(n));
    g.canonicalize();
    return fn == MultFn::InvTwoOmega ? g : Rational(-g);
}

/// Decay summary of |g_n| over 3 <= n <= order.
struct TailReport {
    std::size_t order = 0;
    double max_abs_g = 0.0;
    std::size_t argmax = 0;
    double max_n_abs_g = 0.0;   ///< max n |g_n|; bounded when g_n = O(1/n)
    double decay_rate = 0.0;    ///< (|g_M| / |g_{M/2}|)^(2/M)
    bool bounded_by_one = false;
};

inline TailReport tail_report(const EulerForm& form) {
    TailReport rep;
    rep.order = form.order();
    for (std::size_t n = 3; n <= form.order(); ++n) {
        double v = std::abs(form.g[n].get_d());
        if (v > rep.max_abs_g) {
            rep.max_abs_g = v;
            rep.argmax = n;
        }
        rep.max_n_abs_g = std::max(rep.max_n_abs_g, static_cast<double>(n) * v);
    }
    const std::size_t m = form.order(), half = std::max<std::size_t>(3, m / 2);
    double hi = std::abs(form.g[m].get_d()), lo = std::abs(form.g[half].get_d());
    rep.decay_rate = (lo > 0 && m > half) ? std::pow(hi / lo, 1.0 / static_cast<double>(m - half)) : 0.0;
    rep.bounded_by_one = rep.max_abs_g <= 1.0;
    return rep;
}

/// A printed exponent that does not satisfy the g_1 = g_2 = 0 normalization.
struct Discrepancy {
    std::string id;
    std::string quantity;
    std::string printed;
    std::string derived;
    std::string note;
};

/// Known misprints in the printed zeta(2s) exponents.
inline std::vector<Discrepancy> exponent_discrepancies(MultFn fn) {
    switch (fn) {
        case MultFn::InvTauSquared: {
            auto b = euler_form(fn, 3).b;
            return {{"f2_zeta2s_exponent", "b", "-19/244", to_string(b),
                     "printed (1 - p^-2s)^(19/244) leaves g_2 != 0"}};
        }
        case MultFn::InvTwoOmega: {
            auto b = euler_form(fn, 3).b;
            return {{"f3_zeta2s_sign", "b", "-1/8", to_string(b),
                     "F displayed as zeta(s)^(1/2)/zeta(2s)^(1/8); the local factor requires zeta(2s)^(+1/8)"}};
        }
        default: return {};
    }
}

}  // namespace mvf
