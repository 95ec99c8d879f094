#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvf/arith/interval_sum.hpp"
#include "mvf/asymptotics/exponents.hpp"
#include "mvf/constants/pi_expansion.hpp"

namespace mvf {

/// h (ln x)^{a-1} sum_n K_n (ln x)^-n, plus the full-interval variant
/// X (ln X)^{a-1} sum_n Kfull_n (ln X)^-n for sums over 1..X.
///
/// The full sum picks up the extra 1/s of Perron's formula, so Kfull uses the
/// Taylor coefficients of Pi(u)/(1-u), i.e. the partial sums of Pi_j.
struct AsymptoticModel {
    MultFn fn;
    Rational a;
    std::vector<double> K;
    std::vector<double> K_full;
    double remainder_constant = 1.0;

    std::size_t max_N() const { return K.size() - 1; }
};

inline AsymptoticModel make_model(MultFn fn, const PiExpansion& e) {
    AsymptoticModel m{fn, e.a, {}, {}};
    const Wide a = from_rational<Wide>(e.a);
    Wide partial = 0;
    for (std::size_t n = 0; n < e.Pi.size(); ++n) {
        partial += e.Pi[n];
        m.K.push_back(to_double(e.K[n]));
        m.K_full.push_back(to_double(k_from_pi(partial, a, n)));
    }
    return m;
}

/// Models for all four targets from one shared quadrature.
inline std::vector<AsymptoticModel> make_models(std::size_t N, const TaylorConfig& cfg = {}) {
    std::vector<LocalRule> rules;
    for (auto fn : all_functions) rules.push_back(rule_of(fn));
    const auto ex = pi_taylor(rules, N, cfg);
    std::vector<AsymptoticModel> out;
    for (std::size_t i = 0; i < all_functions.size(); ++i) out.push_back(make_model(all_functions[i], ex[i]));
    return out;
}

struct Prediction {
    double value = 0.0;
    double remainder = 0.0;  ///< |value| (ln x)^-(N+1)
    double lagrange = 0.0;   ///< |value| h / x, the drift of (ln t)^{a-1} across the interval
};

/// Prediction for sum_{x < n <= x+h} f(n); x = 0 means the full sum up to h.
inline Prediction predict(const AsymptoticModel& m, std::uint64_t x, std::uint64_t h, std::size_t N) {
    if (N > m.max_N()) throw std::invalid_argument("predict: N exceeds the computed coefficients");
    if (h < 1) throw std::invalid_argument("predict: h must be positive");
    if (x != 0 && x < 3) throw std::invalid_argument("predict: x must be 0 or at least 3");
    const bool full = x == 0;
    if (full && h < 3) throw std::invalid_argument("predict: full-interval sums need h >= 3");
    const double base = full ? static_cast<double>(h) : static_cast<double>(x);
    const double L = std::log(base);
    const auto& K = full ? m.K_full : m.K;
    double series = 0.0, Ln = 1.0;
    for (std::size_t n = 0; n <= N; ++n) {
        series += K[n] / Ln;
        Ln *= L;
    }
    Prediction p;
    p.value = static_cast<double>(h) * std::pow(L, to_double(m.a) - 1.0) * series;
    p.remainder = m.remainder_constant * std::abs(p.value) / Ln;
    p.lagrange = full ? 0.0 : std::abs(p.value) * static_cast<double>(h) / base;
    return p;
}

struct PredictionReport {
    MultFn fn;
    std::uint64_t x = 0, h = 0;
    std::size_t N = 0;
    Rational exact;
    double exact_value = 0.0;
    Prediction prediction;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.05;
    bool pass = false;
    std::optional<HThreshold> thresholds;  ///< absent for full-interval sums
    double runtime_ms = 0.0;
};

inline PredictionReport make_report(const AsymptoticModel& m, const IntervalSum& s, std::size_t N, double tolerance) {
    PredictionReport r;
    r.fn = m.fn;
    r.x = s.x;
    r.h = s.h;
    r.N = N;
    r.exact = s.exact;
    r.exact_value = to_double(s.exact);
    r.prediction = predict(m, s.x, s.h, N);
    r.abs_err = std::abs(r.prediction.value - r.exact_value);
    r.rel_err = r.abs_err / std::abs(r.exact_value);
    r.tolerance = tolerance;
    r.pass = r.rel_err <= tolerance;
    if (s.x >= 10) r.thresholds = h_threshold(m.fn, static_cast<double>(s.x));
    return r;
}

/// Sieve truth against the prediction, all models over one sieve pass.
inline std::vector<PredictionReport> compare(std::span<const AsymptoticModel> models, std::uint64_t x,
                                             std::uint64_t h, std::size_t N, double tolerance = 0.05,
                                             const SieveConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<MultFn> fns;
    for (const auto& m : models) fns.push_back(m.fn);
    const auto sums = interval_sums(fns, x, h, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::vector<PredictionReport> out;
    for (std::size_t i = 0; i < models.size(); ++i) {
        out.push_back(make_report(models[i], sums[i], N, tolerance));
        out.back().runtime_ms = ms;
    }
    return out;
}

inline PredictionReport compare(const AsymptoticModel& m, std::uint64_t x, std::uint64_t h, std::size_t N,
                                double tolerance = 0.05, const SieveConfig& cfg = {}) {
    return compare(std::span<const AsymptoticModel>(&m, 1), x, h, N, tolerance, cfg)[0];
}

}  // namespace mvf
