#pragma once

#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "mvf/core/complex.hpp"
#include "mvf/core/errors.hpp"
#include "mvf/core/wide.hpp"

namespace mvf {

/// Relative accuracy targets: scan mode (double) and constants mode (Wide).
template <class T>
T default_zeta_tolerance() {
    if constexpr (std::numeric_limits<T>::digits10 > 30)
        return T("1e-56");
    else
        return T(4) * std::numeric_limits<T>::epsilon();
}

template <class T>
struct ZetaConfig {
    std::size_t terms = 0;          ///< direct-sum length N; 0 picks N from |Im s|
    std::size_t max_corrections = 80;  ///< Bernoulli correction depth cap
    T tolerance = default_zeta_tolerance<T>();
};

namespace detail {

/// B_2k / (2k)! for k = 1..count.
template <class T>
const std::vector<T>& bernoulli_over_factorial() {
    static const std::vector<T> table = [] {
        std::vector<T> out;
        T fact = 1;
        for (int k = 1; k <= 120; ++k) {
            fact *= T(2 * k - 1) * T(2 * k);
            out.push_back(boost::math::bernoulli_b2n<T>(k) / fact);
        }
        return out;
    }();
    return table;
}

template <class T>
std::size_t auto_terms(const Complex<T>& s) {
    using std::abs;
    const std::size_t base = std::numeric_limits<T>::digits10 > 30 ? 40 : 12;
    return base + static_cast<std::size_t>(to_double(abs(s.im)) / 3.0);
}

/// Pieces of the Euler-Maclaurin expansion with n running from `first`:
///   head = sum_{first <= n < N} n^-s
///   pole = N^{1-s}
///   rest = N^-s / 2 + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
/// zeta(s) = [first == 1] + ... = head + pole/(s-1) + rest.
template <class T>
struct EmParts {
    Complex<T> head;
    Complex<T> pole;
    Complex<T> rest;
};

/// Adds pole and Bernoulli corrections at cut N to a precomputed head.
/// Returns false when the asymptotic series turns before reaching tolerance.
template <class T>
bool em_corrections(const Complex<T>& s, std::size_t n_terms, const Complex<T>& n_pow, const ZetaConfig<T>& cfg,
                    EmParts<T>& parts) {
    using std::abs;
    const auto& b2k = bernoulli_over_factorial<T>();
    const T big_n = T(n_terms);
    parts.pole = n_pow * big_n;
    parts.rest = n_pow / T(2);
    // Converged when a correction drops below tol relative to the magnitude
    // of what it corrects.
    const T scale = abs(parts.head) + abs(parts.pole) + abs(parts.rest);
    Complex<T> poch = s;                      // s (s+1) ... (s+2k-2)
    Complex<T> n_scale = n_pow / big_n;       // N^{-s-2k+1}
    const T inv_n2 = T(1) / (big_n * big_n);
    T previous = std::numeric_limits<T>::max();
    for (std::size_t k = 1; k <= cfg.max_corrections && k <= b2k.size(); ++k) {
        Complex<T> term = poch * n_scale * b2k[k - 1];
        T mag = abs(term);
        parts.rest += term;
        if (mag <= cfg.tolerance * scale) return true;
        if (mag > previous) return false;  // asymptotic series turned; need larger N
        previous = mag;
        poch *= (s + Complex<T>(T(2 * k - 1))) * (s + Complex<T>(T(2 * k)));
        n_scale *= inv_n2;
    }
    return false;
}

template <class T>
EmParts<T> euler_maclaurin(const Complex<T>& s, std::size_t first, const ZetaConfig<T>& cfg) {
    using std::log;
    std::size_t n_terms = cfg.terms ? cfg.terms : auto_terms(s);
    for (int attempt = 0; attempt < 4; ++attempt, n_terms *= 2) {
        EmParts<T> parts;
        for (std::size_t n = first; n < n_terms; ++n) parts.head += pow_neg(T(log(T(n))), s);
        const Complex<T> n_pow = pow_neg(T(log(T(n_terms))), s);  // N^-s
        if (em_corrections(s, n_terms, n_pow, cfg, parts)) return parts;
    }
    throw precision_error("zeta: Euler-Maclaurin did not converge");
}

}  // namespace detail

/// Riemann zeta for s != 1 by Euler-Maclaurin summation.
template <class T>
Complex<T> zeta(const Complex<T>& s, const ZetaConfig<T>& cfg = {}) {
    if (s.re == T(1) && s.im == T(0)) throw domain_error("zeta: pole at s = 1");
    auto p = detail::euler_maclaurin(s, 1, cfg);
    return p.head + p.pole / (s - Complex<T>(T(1))) + p.rest;
}

template <class T>
T zeta(const T& s, const ZetaConfig<T>& cfg = {}) {
    return zeta(Complex<T>(s), cfg).re;
}

/// zeta(s) - 1 with full relative precision for large Re s.
template <class T>
Complex<T> zeta_minus_one(const Complex<T>& s, const ZetaConfig<T>& cfg = {}) {
    if (s.re == T(1) && s.im == T(0)) throw domain_error("zeta: pole at s = 1");
    auto p = detail::euler_maclaurin(s, 2, cfg);
    return p.head + p.pole / (s - Complex<T>(T(1))) + p.rest;
}

/// w(s) = (s - 1) zeta(s), entire; w(1) = 1.
template <class T>
Complex<T> w(const Complex<T>& s, const ZetaConfig<T>& cfg = {}) {
    auto p = detail::euler_maclaurin(s, 1, cfg);
    return (s - Complex<T>(T(1))) * (p.head + p.rest) + p.pole;
}

/// zeta via 1/2 + 1/(s-1) + s * int_1^inf (1/2 - {u}) u^{-s-1} du, Re s > 0.
///
/// Each unit interval integrates in closed form; the sum is cut at `periods`
/// with no tail correction, so accuracy is roughly |s|^2 / (12 periods^{Re s+1}).
/// Kept as an independent check on the Euler-Maclaurin evaluator.
inline Complex<double> zeta_integral_form(const Complex<double>& s, std::size_t periods = 200000) {
    if (s.re <= 0) throw domain_error("zeta_integral_form: needs Re s > 0");
    if (s.re == 1 && s.im == 0) throw domain_error("zeta: pole at s = 1");
    const Complex<double> one(1.0);
    Complex<double> integral;
    Complex<double> m_pow_s = one;        // m^-s at m = 1
    Complex<double> m_pow_1s = one;       // m^{1-s}
    for (std::size_t m = 1; m <= periods; ++m) {
        double lm1 = std::log(static_cast<double>(m + 1));
        Complex<double> next_s = pow_neg(lm1, s);
        Complex<double> next_1s = next_s * static_cast<double>(m + 1);
        // int_m^{m+1} (m + 1/2 - u) u^{-s-1} du
        Complex<double> a = (m_pow_s - next_s) / s * (static_cast<double>(m) + 0.5);
        Complex<double> b = (m_pow_1s - next_1s) / (s - one);
        integral += a - b;
        m_pow_s = next_s;
        m_pow_1s = next_1s;
    }
    return Complex<double>(0.5) + one / (s - one) + s * integral;
}

}  // namespace mvf
