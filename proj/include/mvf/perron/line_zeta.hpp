#pragma once

#include <cmath>
#include <vector>

#include "mvf/zeta/zeta.hpp"

namespace mvf {

/// zeta(sigma + it) in double for many t on one vertical line.
///
/// ln n and n^-sigma are tabulated once, so each head term costs a single
/// sincos. Falls back to the generic evaluator if N outgrows the table.
class LineZeta {
public:
    LineZeta(double sigma, double t_max, ZetaConfig<double> cfg = {}) : sigma_(sigma), cfg_(cfg) {
        const std::size_t n_max = 2 * detail::auto_terms(Complex<double>(sigma, t_max)) + 2;
        log_n_.resize(n_max + 1);
        pow_n_.resize(n_max + 1);
        for (std::size_t n = 1; n <= n_max; ++n) {
            log_n_[n] = std::log(static_cast<double>(n));
            pow_n_[n] = std::exp(-sigma * log_n_[n]);
        }
    }

    double sigma() const { return sigma_; }

    Complex<double> operator()(double t) const {
        const Complex<double> s(sigma_, t);
        std::size_t n_terms = detail::auto_terms(s);
        for (int attempt = 0; attempt < 2 && n_terms < log_n_.size(); ++attempt, n_terms *= 2) {
            detail::EmParts<double> parts;
            double re = 0.0, im = 0.0;
            for (std::size_t n = 1; n < n_terms; ++n) {
                const double ph = t * log_n_[n];
                re += pow_n_[n] * std::cos(ph);
                im -= pow_n_[n] * std::sin(ph);
            }
            parts.head = Complex<double>(re, im);
            const double ph = t * log_n_[n_terms];
            const Complex<double> n_pow(pow_n_[n_terms] * std::cos(ph), -pow_n_[n_terms] * std::sin(ph));
            if (detail::em_corrections(s, n_terms, n_pow, cfg_, parts))
                return parts.head + parts.pole / (s - Complex<double>(1.0)) + parts.rest;
        }
        return zeta(s, cfg_);
    }

private:
    double sigma_;
    ZetaConfig<double> cfg_;
    std::vector<double> log_n_, pow_n_;
};

}  // namespace mvf
