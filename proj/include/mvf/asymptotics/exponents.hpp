#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mvf/arith/mult_fn.hpp"
#include "mvf/core/rational.hpp"

namespace mvf {

/// Zero-density exponent and the zeta growth exponent c on Re s = 1/2.
inline Rational density_exponent() { return Rational(12, 5); }
inline Rational zeta_growth_exponent() { return Rational(64, 205); }

/// 1 - 1/(12/5 + c/k), exact.
inline Rational admissible_alpha(int k) {
    if (k < 2 || k > 4) throw std::invalid_argument("admissible_alpha: k must be 2, 3 or 4");
    const Rational denom = density_exponent() + zeta_growth_exponent() / Rational(k);
    Rational out = Rational(1) - Rational(1) / denom;
    out.canonicalize();
    return out;
}

/// k = 1/a, the power of zeta in the Euler form.
inline int zeta_power_denominator(MultFn fn) {
    switch (fn) {
        case MultFn::InvTauSq: return 3;
        case MultFn::InvTauSquared: return 4;
        case MultFn::InvTwoOmega:
        case MultFn::InvTwoBigOmega: return 2;
    }
    throw std::invalid_argument("zeta_power_denominator: unknown function");
}

struct ExponentTable {
    Rational c = zeta_growth_exponent();
    Rational density = density_exponent();
    struct Row {
        MultFn fn;
        int k;
        Rational alpha;
    };
    std::vector<Row> rows;
};

inline ExponentTable exponent_table() {
    ExponentTable t;
    for (auto fn : all_functions) {
        const int k = zeta_power_denominator(fn);
        t.rows.push_back({fn, k, admissible_alpha(k)});
    }
    return t;
}

struct ContourHeight {
    double T = 0.0;
    double h_threshold = 0.0;  ///< (x/T) (ln x)^2
};

/// T with T^{12/5 + c/k} = x / D(x), D(x) = exp(C1 (ln x)^0.8).
inline ContourHeight choose_T(double x, int k, double C1 = 1.0) {
    if (!(x >= 10)) throw std::invalid_argument("choose_T: x must be at least 10");
    if (!(C1 > 0)) throw std::invalid_argument("choose_T: C1 must be positive");
    if (k < 2 || k > 4) throw std::invalid_argument("choose_T: k must be 2, 3 or 4");
    const double e = to_double(Rational(density_exponent() + zeta_growth_exponent() / Rational(k)));
    const double lx = std::log(x);
    const double log_t = (lx - C1 * std::pow(lx, 0.8)) / e;
    ContourHeight out;
    out.T = std::exp(log_t);
    out.h_threshold = std::exp(lx - log_t) * lx * lx;
    return out;
}

struct HThreshold {
    double theorem = 0.0;  ///< x^alpha exp((ln x)^0.1)
    double proof = 0.0;    ///< x^alpha exp(C2 (ln x)^0.8)
};

inline HThreshold h_threshold(MultFn fn, double x, double C2 = 1.0) {
    if (!(x >= 10)) throw std::invalid_argument("h_threshold: x must be at least 10");
    const double alpha = to_double(admissible_alpha(zeta_power_denominator(fn)));
    const double lx = std::log(x);
    return {std::exp(alpha * lx + std::pow(lx, 0.1)), std::exp(alpha * lx + C2 * std::pow(lx, 0.8))};
}

}  // namespace mvf
