#pragma once

#include <boost/math/special_functions/factorials.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvf/core/parallel.hpp"
#include "mvf/core/rational.hpp"
#include "mvf/numeric/gauss_legendre.hpp"
#include "mvf/zeta/zeta.hpp"

namespace mvf {

/// Double-precision settings for critical-line scans.
inline ZetaConfig<double> scan_config() {
    ZetaConfig<double> cfg;
    cfg.tolerance = 1e-12;
    return cfg;
}

struct MomentOptions {
    double max_panel = 0.25;
    double rel_tol = 1e-4;
    unsigned threads = default_threads();
};

namespace detail {

template <class F>
double adaptive_panel(F& f, double a, double b, double rel_tol, int depth) {
    const double fine = gauss_legendre<16>(f, a, b);
    const double coarse = gauss_legendre<8>(f, a, b);
    if (std::abs(fine - coarse) <= rel_tol * std::abs(fine) || depth >= 12) return fine;
    const double m = 0.5 * (a + b);
    return adaptive_panel(f, a, m, rel_tol, depth + 1) + adaptive_panel(f, m, b, rel_tol, depth + 1);
}

}  // namespace detail

/// int_0^T |zeta(1/2 + it)|^2 dt by adaptive Gauss-Legendre panels.
inline double second_moment(double T, const MomentOptions& opt = {}) {
    if (!(T >= 10.0)) throw std::invalid_argument("second_moment: T must be >= 10");
    const auto cfg = scan_config();
    const auto panels = static_cast<std::size_t>(std::ceil(T / opt.max_panel));
    const double width = T / static_cast<double>(panels);
    std::vector<double> parts(panels);
    parallel_for(panels, opt.threads, [&](std::size_t i) {
        auto f = [&](double t) { return norm(zeta(Complex<double>(0.5, t), cfg)); };
        const double a = width * static_cast<double>(i);
        parts[i] = detail::adaptive_panel(f, a, a + width, opt.rel_tol, 0);
    });
    double total = 0.0;
    for (double v : parts) total += v;
    return total;
}

struct GammaTailCheck {
    double lhs = 0.0;  ///< int_lambda^inf w^{k-gamma} e^{-w} dw
    double rhs = 0.0;  ///< e k! lambda^{k-gamma} e^{-lambda}
    bool holds = false;
};

/// Checks int_lambda^inf w^{k-gamma} e^{-w} dw < e k! lambda^{k-gamma} e^{-lambda}.
inline GammaTailCheck gamma_tail_check(double lambda, int k, const Rational& gamma) {
    const double g = gamma.get_d();
    if (!(lambda > 1.0)) throw std::invalid_argument("gamma_tail_check: lambda must exceed 1");
    if (k < 1) throw std::invalid_argument("gamma_tail_check: k must be >= 1");
    if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("gamma_tail_check: gamma must lie in (0, 1)");
    const double a = static_cast<double>(k) - g;
    auto f = [a](double w) { return std::exp(a * std::log(w) - w); };
    // Integrate out to where the integrand is ~1e-300 relative, then bound the rest:
    // int_W^inf w^a e^-w dw <= W^a e^-W / (1 - a/W) for W > a.
    const double upper = lambda + std::max(60.0, 4.0 * a) + 40.0;
    double lhs = 0.0;
    for (double x = lambda; x < upper; x += 1.0) lhs += gauss_legendre<20>(f, x, std::min(x + 1.0, upper));
    lhs += f(upper) / (1.0 - a / upper);
    const double rhs = std::numbers::e * boost::math::factorial<double>(static_cast<unsigned>(k)) *
                       std::exp(a * std::log(lambda) - lambda);
    return {lhs, rhs, lhs < rhs};
}

/// The convexity exponent 64/205 in |zeta(sigma+it)| << t^{c(1-sigma)} ln t.
inline Rational growth_exponent() { return Rational(64, 205); }

struct GrowthSample {
    double sigma = 0.0;
    double t = 0.0;
    double abs_zeta = 0.0;
    double envelope = 0.0;  ///< t^{c(1-sigma)} ln t
    double ratio = 0.0;
};

struct GrowthEnvelopeReport {
    Rational c = growth_exponent();
    std::vector<GrowthSample> samples;
    double fitted_k = 0.0;  ///< max ratio over the samples
};

struct GridSpec {
    std::vector<double> sigmas;
    std::vector<double> ts;

    /// Uniform sigma grid and logarithmic t grid.
    static GridSpec rectangle(double s0, double s1, std::size_t ns, double t0, double t1, std::size_t nt) {
        GridSpec g;
        for (std::size_t i = 0; i < ns; ++i)
            g.sigmas.push_back(ns == 1 ? s0 : s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(ns - 1));
        for (std::size_t j = 0; j < nt; ++j)
            g.ts.push_back(nt == 1 ? t0
                                   : t0 * std::pow(t1 / t0, static_cast<double>(j) / static_cast<double>(nt - 1)));
        return g;
    }
};

inline GrowthEnvelopeReport growth_envelope(const GridSpec& grid, unsigned threads = default_threads()) {
    if (grid.sigmas.empty() || grid.ts.empty()) throw std::invalid_argument("growth_envelope: empty grid");
    for (double s : grid.sigmas)
        if (s < 0.5 || s > 1.0) throw std::invalid_argument("growth_envelope: sigma outside [1/2, 1]");
    for (double t : grid.ts)
        if (t < 10.0 || t > 1e4) throw std::invalid_argument("growth_envelope: t outside [10, 1e4]");
    GrowthEnvelopeReport rep;
    const double c = rep.c.get_d();
    const auto cfg = scan_config();
    rep.samples.resize(grid.sigmas.size() * grid.ts.size());
    parallel_for(rep.samples.size(), threads, [&](std::size_t idx) {
        const double sigma = grid.sigmas[idx / grid.ts.size()];
        const double t = grid.ts[idx % grid.ts.size()];
        GrowthSample s{sigma, t, abs(zeta(Complex<double>(sigma, t), cfg)), 0.0, 0.0};
        s.envelope = std::pow(t, c * (1.0 - sigma)) * std::log(t);
        s.ratio = s.abs_zeta / s.envelope;
        rep.samples[idx] = s;
    });
    for (const auto& s : rep.samples) rep.fitted_k = std::max(rep.fitted_k, s.ratio);
    return rep;
}

struct ArcBounds {
    double delta = 0.0;
    double max_zeta = 0.0;        ///< max |zeta(s)| on the arc
    double min_zeta2_scaled = 0.0;  ///< min |zeta(2s)| * delta on the arc
    bool zeta_bound_ok = false;   ///< max_zeta <= 3.2
    bool zeta2_bound_ok = false;  ///< min_zeta2_scaled >= 0.4
};

/// Samples s = 1/2 + delta e^{i phi}, phi in [-pi/2, pi/2], at 64 angles.
inline ArcBounds arc_bounds_check(double delta, std::size_t angles = 64) {
    if (!(delta > 0.0 && delta <= 0.05)) throw std::invalid_argument("arc_bounds_check: delta must lie in (0, 0.05]");
    const auto cfg = scan_config();
    ArcBounds out;
    out.delta = delta;
    out.min_zeta2_scaled = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < angles; ++j) {
        const double phi = -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles - 1);
        const Complex<double> s(0.5 + delta * std::cos(phi), delta * std::sin(phi));
        out.max_zeta = std::max(out.max_zeta, abs(zeta(s, cfg)));
        out.min_zeta2_scaled = std::min(out.min_zeta2_scaled, abs(zeta(s * 2.0, cfg)) * delta);
    }
    out.zeta_bound_ok = out.max_zeta <= 3.2;
    out.zeta2_bound_ok = out.min_zeta2_scaled >= 0.4;
    return out;
}

}  // namespace mvf
