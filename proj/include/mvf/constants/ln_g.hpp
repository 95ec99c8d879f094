#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "mvf/arith/mult_fn.hpp"
#include "mvf/series/euler_form.hpp"
#include "mvf/zeta/prime_zeta.hpp"

namespace mvf {

struct LnGConfig {
    std::size_t order = 40;              ///< g_n kept for n <= order
    std::uint64_t small_prime_cutoff = 128;  ///< primes below this enter as exact local factors
    std::uint64_t direct_prime_limit = 10000;  ///< double route: rough primes summed up to here
    double g_bound = 1.0;                ///< assumed sup |g_n| for n > order
    double max_tail = 1e-6;              ///< larger truncation bound is a domain error
};

/// An Euler form converted to working precision, plus the local-factor
/// coefficients f(p^k) needed to evaluate ln G_p(s) exactly for small p.
template <class T>
struct NumericForm {
    std::string name;
    Rational a_exact, b_exact;
    T a, b;
    std::vector<T> g;
    std::vector<T> local;

    NumericForm(const LocalRule& rule, std::size_t order, std::size_t local_terms = 1600) {
        const auto form = euler_form(rule, order);
        name = form.name;
        a_exact = form.a;
        b_exact = form.b;
        a = from_rational<T>(form.a);
        b = from_rational<T>(form.b);
        for (const auto& q : form.g) g.push_back(from_rational<T>(q));
        for (std::size_t k = 0; k <= local_terms; ++k) local.push_back(from_rational<T>(rule.value(static_cast<unsigned>(k))));
    }

    /// ln G_p = ln F_p(X) + a ln(1 - X) + b ln(1 - X^2), X = p^-s.
    Complex<T> local_ln_g(const Complex<T>& x, const T& tol) const {
        using std::abs;
        Complex<T> sum;  // F_p(X) - 1
        Complex<T> xk = x;
        const T ax = abs(x);
        T mag = ax;
        for (std::size_t k = 1; k < local.size(); ++k) {
            sum += xk * local[k];
            if (mag < tol) break;
            xk *= x;
            mag *= ax;
            if (k + 1 == local.size()) throw precision_error("local factor series did not converge");
        }
        return log1p(sum) + log1p(-x) * a + log1p(-(x * x)) * b;
    }
};

/// ln G(s) with its truncation-error budget.
template <class T>
struct LnGValue {
    Complex<T> value;
    double tail_bound = 0.0;
};

/// Per-s prime data shared by every form evaluated at the same point.
template <class T>
struct PrimeSums {
    Complex<T> s;
    std::vector<Complex<T>> small_x;  ///< p^-s for p below the cutoff
    std::vector<Complex<T>> rough;    ///< P_Q(ns), n = 0..order
    double extra_bound = 0.0;         ///< primes omitted by the direct route
};

/// ln G(s) = sum_{p<Q} ln G_p(s) + sum_{3<=n<=M} g_n P_Q(ns) + tail.
///
/// P_Q is the prime zeta over p >= Q. Two routes build it: Mobius inversion of
/// log zeta (any precision, moderate |Im s|), and direct prime power sums
/// (double, any |Im s|). The tail bound covers n > M with |g_n| <= g_bound.
template <class T>
class LnGEvaluator {
public:
    explicit LnGEvaluator(LnGConfig cfg = {}, ZetaConfig<T> zcfg = {})
        : cfg_(cfg), zcfg_(zcfg), rough_(cfg.small_prime_cutoff) {}

    const LnGConfig& config() const { return cfg_; }
    const ZetaConfig<T>& zeta_config() const { return zcfg_; }
    const RoughPrimeZeta<T>& rough() const { return rough_; }

    double tail_bound(double sigma) const {
        double total = 0.0;
        for (std::size_t n = cfg_.order + 1; n < cfg_.order + 4000; ++n) {
            if (n * sigma <= 1.0) return std::numeric_limits<double>::infinity();
            const double term = cfg_.g_bound * rough_.bound(static_cast<double>(n) * sigma);
            total += term;
            if (term < 1e-80) break;
        }
        return total;
    }

    void check_domain(const Complex<T>& s) const {
        const double sigma = to_double(s.re);
        if (!(sigma > 1.0 / 3.0 + 0.05)) throw domain_error("ln_G: Re s must exceed 1/3 + 0.05");
        if (tail_bound(sigma) > cfg_.max_tail) throw domain_error("ln_G: truncation bound does not close at this Re s");
    }

    PrimeSums<T> prime_sums(const Complex<T>& s) const {
        using std::log;
        check_domain(s);
        PrimeSums<T> out;
        out.s = s;
        for (auto p : rough_.small_primes()) out.small_x.push_back(pow_neg(T(log(T(p))), s));
        out.rough = rough_.multiples(s, cfg_.order, zcfg_);
        return out;
    }

    LnGValue<T> evaluate(const NumericForm<T>& form, const PrimeSums<T>& ps) const {
        LnGValue<T> out;
        for (const auto& x : ps.small_x) out.value += form.local_ln_g(x, zcfg_.tolerance);
        const std::size_t top = std::min(cfg_.order, form.g.size() - 1);
        for (std::size_t n = 3; n <= top; ++n) out.value += ps.rough[n] * form.g[n];
        out.tail_bound = tail_bound(to_double(ps.s.re)) + ps.extra_bound;
        return out;
    }

    LnGValue<T> operator()(const NumericForm<T>& form, const Complex<T>& s) const {
        return evaluate(form, prime_sums(s));
    }

private:
    LnGConfig cfg_;
    ZetaConfig<T> zcfg_;
    RoughPrimeZeta<T> rough_;
};

/// Double-precision ln G for points far up a vertical line (|Im s| large),
/// using direct prime power sums in place of the Mobius route.
class DirectLnG {
public:
    explicit DirectLnG(LnGConfig cfg = {}) : cfg_(cfg), rough_(cfg.small_prime_cutoff) {
        for (auto p : primes_up_to(cfg.direct_prime_limit)) {
            if (p < cfg.small_prime_cutoff) ++n_small_;
            logs_.push_back(std::log(static_cast<double>(p)));
        }
    }

    /// ln p for every prime up to the direct limit; the first n_small() are the exact local factors.
    const std::vector<double>& prime_logs() const { return logs_; }
    std::size_t n_small() const { return n_small_; }
    const LnGConfig& config() const { return cfg_; }

    PrimeSums<double> prime_sums(const Complex<double>& s) const {
        std::vector<Complex<double>> x(logs_.size());
        for (std::size_t i = 0; i < logs_.size(); ++i) x[i] = pow_neg(logs_[i], s);
        return prime_sums(s, x);
    }

    /// Same, from precomputed p^-s in prime_logs() order.
    PrimeSums<double> prime_sums(const Complex<double>& s, const std::vector<Complex<double>>& x) const {
        const double sigma = s.re;
        if (!(sigma > 1.0 / 3.0 + 0.05)) throw domain_error("ln_G: Re s must exceed 1/3 + 0.05");
        PrimeSums<double> out;
        out.s = s;
        out.small_x.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_small_));
        out.rough.assign(cfg_.order + 1, Complex<double>());
        for (std::size_t i = n_small_; i < x.size(); ++i) {
            const double ax = abs(x[i]);
            Complex<double> xn = x[i];
            double mag = ax;
            for (std::size_t n = 1; n <= cfg_.order && mag > 1e-19; ++n) {
                out.rough[n] += xn;
                xn *= x[i];
                mag *= ax;
            }
        }
        // primes above the limit: sum_{m > L} m^-n sigma <= L^{1 - n sigma} / (n sigma - 1)
        const double L = static_cast<double>(cfg_.direct_prime_limit);
        for (std::size_t n = 3; n <= cfg_.order; ++n) {
            const double e = static_cast<double>(n) * sigma;
            if (e <= 1.0) throw domain_error("ln_G: direct prime sums need n Re s > 1");
            out.extra_bound += cfg_.g_bound * std::pow(L, 1.0 - e) / (e - 1.0);
        }
        return out;
    }

    LnGValue<double> evaluate(const NumericForm<double>& form, const PrimeSums<double>& ps) const {
        LnGValue<double> out;
        for (const auto& x : ps.small_x) out.value += form.local_ln_g(x, 1e-17);
        const std::size_t top = std::min(cfg_.order, form.g.size() - 1);
        for (std::size_t n = 3; n <= top; ++n) out.value += ps.rough[n] * form.g[n];
        double tail = 0.0;
        for (std::size_t n = cfg_.order + 1; n < cfg_.order + 400; ++n) {
            const double term = cfg_.g_bound * rough_.bound(static_cast<double>(n) * ps.s.re);
            tail += term;
            if (term < 1e-30) break;
        }
        // the per-prime power loop drops terms below 1e-19 each
        out.tail_bound = tail + ps.extra_bound + 1e-19 * static_cast<double>(logs_.size()) * static_cast<double>(cfg_.order);
        return out;
    }

private:
    LnGConfig cfg_;
    RoughPrimeZeta<double> rough_;
    std::vector<double> logs_;
    std::size_t n_small_ = 0;
};

/// ln G(s) for one of the four targets.
template <class T>
LnGValue<T> ln_G(MultFn fn, const Complex<T>& s, const LnGConfig& cfg = {}) {
    LnGEvaluator<T> eval(cfg);
    NumericForm<T> form(rule_of(fn), cfg.order);
    return eval(form, s);
}

}  // namespace mvf
