#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mvf/constants/ln_g.hpp"
#include "mvf/core/parallel.hpp"

namespace mvf {

/// Pi(u) = G(1-u) w(1-u)^a zeta(2-2u)^b for several forms at once; the zeta
/// values and prime sums at each point are shared.
class PiEvaluator {
public:
    explicit PiEvaluator(const std::vector<LocalRule>& rules, LnGConfig cfg = {}) : lng_(cfg) {
        for (const auto& r : rules) forms_.emplace_back(r, cfg.order);
    }

    std::size_t size() const { return forms_.size(); }
    const NumericForm<Wide>& form(std::size_t i) const { return forms_[i]; }

    struct Point {
        std::vector<Complex<Wide>> value;
        double tail_bound = 0.0;  ///< on |ln G|; relative error of each value
    };

    Point operator()(const Complex<Wide>& u) const {
        using std::abs;
        if (to_double(abs(u)) > 0.25 + 1e-15) throw domain_error("pi_function: requires |u| <= 1/4");
        const Complex<Wide> one(Wide(1));
        const Complex<Wide> s = one - u;
        const auto ps = lng_.prime_sums(s);
        const Complex<Wide> wv = w(s, lng_.zeta_config());
        const Complex<Wide> z2 = zeta(s * Wide(2), lng_.zeta_config());
        // both bases sit near the positive real axis on this disc
        if (!(wv.re > 0) || !(z2.re > 0)) throw domain_error("pi_function: branch cut reached");
        const Complex<Wide> lw = log(wv), lz2 = log(z2);
        Point out;
        for (const auto& f : forms_) {
            const auto g = lng_.evaluate(f, ps);
            out.tail_bound = std::max(out.tail_bound, g.tail_bound);
            out.value.push_back(exp(g.value + lw * f.a + lz2 * f.b));
        }
        return out;
    }

private:
    LnGEvaluator<Wide> lng_;
    std::vector<NumericForm<Wide>> forms_;
};

inline Complex<Wide> pi_function(MultFn fn, const Complex<Wide>& u, const LnGConfig& cfg = {}) {
    PiEvaluator ev({rule_of(fn)}, cfg);
    return ev(u).value[0];
}

/// Taylor coefficients of Pi around 0 and the normalized constants
/// K_n = (-1)^n Pi_n / Gamma(a - n).
struct PiExpansion {
    std::string fid;
    Rational a, b;
    std::vector<Wide> Pi;
    std::vector<Wide> K;
    std::vector<Wide> K_reflection;  ///< sin(pi a)/pi Gamma(n+1-a) Pi_n
    double imag_max = 0.0;           ///< largest |Im| left by the quadrature
    double radius = 0.125;
    std::size_t nodes = 0;
    double error_budget = 0.0;
};

struct TaylorConfig {
    double radius = 0.125;
    std::size_t initial_nodes = 64;
    std::size_t max_nodes = 1024;
    double tolerance = 1e-20;
    unsigned threads = 0;
    LnGConfig lng{};
};

/// K_n = (-1)^n Pi_n / Gamma(a - n).
inline Wide k_from_pi(const Wide& pi_n, const Wide& a, std::size_t n) {
    const Wide g = boost::math::tgamma(a - Wide(static_cast<long>(n)));
    return (n % 2 ? -pi_n : pi_n) / g;
}

/// Same quantity through the reflection formula; no Gamma at negative arguments.
inline Wide k_by_reflection(const Wide& pi_n, const Wide& a, std::size_t n) {
    using std::sin;
    const Wide p = pi<Wide>();
    return sin(p * a) / p * boost::math::tgamma(Wide(static_cast<long>(n + 1)) - a) * pi_n;
}

namespace detail {

inline Complex<Wide> circle_node(double radius, std::size_t j, std::size_t n) {
    using std::cos;
    using std::sin;
    const Wide theta = Wide(2) * pi<Wide>() * Wide(static_cast<long>(j)) / Wide(static_cast<long>(n));
    return Complex<Wide>(Wide(radius) * cos(theta), Wide(radius) * sin(theta));
}

}  // namespace detail

/// Pi_0..Pi_N for every rule by the trapezoid rule on |u| = radius.
///
/// Nodes double (reusing the old ones) until no coefficient moves by more than
/// the tolerance.
inline std::vector<PiExpansion> pi_taylor(const std::vector<LocalRule>& rules, std::size_t N,
                                          const TaylorConfig& cfg = {}) {
    if (N > 8) throw std::invalid_argument("pi_taylor: N must be at most 8");
    if (!(cfg.radius > 0 && cfg.radius <= 0.25)) throw domain_error("pi_taylor: radius must lie in (0, 1/4]");
    const PiEvaluator ev(rules, cfg.lng);
    const std::size_t nf = rules.size();
    const unsigned threads = cfg.threads ? cfg.threads : default_threads();

    std::vector<Complex<Wide>> values;  // values[j * nf + f] at node j of the current grid
    double tail = 0.0;
    auto eval_nodes = [&](std::size_t n, std::size_t start, std::size_t step) {
        const std::size_t count = (n - start + step - 1) / step;
        std::vector<PiEvaluator::Point> pts(count);
        parallel_for(count, threads, [&](std::size_t i) { pts[i] = ev(detail::circle_node(cfg.radius, start + i * step, n)); });
        return pts;
    };

    auto coefficients = [&](std::size_t n) {
        // c[f][k] = (1/n) sum_j Pi_f(u_j) u_j^{-k}
        std::vector<std::vector<Complex<Wide>>> c(nf, std::vector<Complex<Wide>>(N + 1));
        for (std::size_t j = 0; j < n; ++j) {
            const Complex<Wide> u = detail::circle_node(cfg.radius, j, n);
            const Complex<Wide> inv = Complex<Wide>(Wide(1)) / u;
            for (std::size_t f = 0; f < nf; ++f) {
                Complex<Wide> term = values[j * nf + f];
                for (std::size_t k = 0; k <= N; ++k) {
                    c[f][k] += term;
                    term *= inv;
                }
            }
        }
        for (auto& row : c)
            for (auto& v : row) v = v / Wide(static_cast<long>(n));
        return c;
    };

    std::size_t n = cfg.initial_nodes;
    {
        auto pts = eval_nodes(n, 0, 1);
        values.resize(n * nf);
        for (std::size_t j = 0; j < n; ++j) {
            tail = std::max(tail, pts[j].tail_bound);
            for (std::size_t f = 0; f < nf; ++f) values[j * nf + f] = pts[j].value[f];
        }
    }
    auto coef = coefficients(n);
    double change = 0.0;
    for (;;) {
        if (2 * n > cfg.max_nodes) {
            throw precision_error("pi_taylor: no convergence with " + std::to_string(n) +
                                  " nodes, last change " + std::to_string(change));
        }
        // odd nodes of the doubled grid are the new points
        auto pts = eval_nodes(2 * n, 1, 2);
        std::vector<Complex<Wide>> merged(2 * n * nf);
        for (std::size_t j = 0; j < n; ++j) {
            tail = std::max(tail, pts[j].tail_bound);
            for (std::size_t f = 0; f < nf; ++f) {
                merged[2 * j * nf + f] = values[j * nf + f];
                merged[(2 * j + 1) * nf + f] = pts[j].value[f];
            }
        }
        values.swap(merged);
        n *= 2;
        auto next = coefficients(n);
        change = 0.0;
        for (std::size_t f = 0; f < nf; ++f)
            for (std::size_t k = 0; k <= N; ++k) change = std::max(change, to_double(abs(next[f][k] - coef[f][k])));
        coef.swap(next);
        if (change < cfg.tolerance) break;
    }

    std::vector<PiExpansion> out;
    for (std::size_t f = 0; f < nf; ++f) {
        const auto& form = ev.form(f);
        PiExpansion e;
        e.fid = form.name;
        e.a = form.a_exact;
        e.b = form.b_exact;
        e.radius = cfg.radius;
        e.nodes = n;
        double biggest = 0.0;
        for (std::size_t k = 0; k <= N; ++k) {
            e.imag_max = std::max(e.imag_max, to_double(abs(coef[f][k].im)));
            e.Pi.push_back(coef[f][k].re);
            e.K.push_back(k_from_pi(coef[f][k].re, form.a, k));
            e.K_reflection.push_back(k_by_reflection(coef[f][k].re, form.a, k));
            biggest = std::max(biggest, std::abs(to_double(coef[f][k].re)));
        }
        // ln G truncation perturbs each node value by a relative tail; the
        // coefficient of u^k picks that up at most r^-k times.
        e.error_budget = change + 2.0 * tail * biggest * std::pow(cfg.radius, -static_cast<double>(N));
        out.push_back(std::move(e));
    }
    return out;
}

inline PiExpansion pi_taylor(MultFn fn, std::size_t N, const TaylorConfig& cfg = {}) {
    return pi_taylor(std::vector<LocalRule>{rule_of(fn)}, N, cfg)[0];
}

}  // namespace mvf
