#pragma once

#include <cstdint>
#include <vector>

#include "mvf/arith/primes.hpp"
#include "mvf/zeta/zeta.hpp"

namespace mvf {

inline int mobius(std::uint64_t k) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        k /= p;
        if (k % p == 0) return 0;
        mu = -mu;
    }
    return k > 1 ? -mu : mu;
}

/// P(s) = sum_p p^-s = sum_k mu(k)/k log zeta(ks), Re s > 1.
template <class T>
Complex<T> prime_zeta(const Complex<T>& s, const ZetaConfig<T>& cfg = {}) {
    using std::abs;
    if (!(s.re > T(1))) throw domain_error("prime_zeta: requires Re s > 1");
    Complex<T> total;
    for (std::uint64_t k = 1; k < 4096; ++k) {
        const int mu = mobius(k);
        const Complex<T> zm1 = zeta_minus_one(s * T(k), cfg);
        if (mu != 0) total += log1p(zm1) * (T(mu) / T(k));
        // zeta(ks) - 1 ~ 2^{-k Re s} decreases monotonically in k
        if (k > 1 && abs(zm1) / T(k) < cfg.tolerance * abs(total)) return total;
    }
    throw precision_error("prime_zeta: Mobius series did not converge");
}

template <class T>
T prime_zeta(const T& s, const ZetaConfig<T>& cfg = {}) {
    return prime_zeta(Complex<T>(s), cfg).re;
}

/// Prime zeta restricted to primes >= cutoff, evaluated at n*s for n = 0..max_n.
///
/// Uses log zeta_Q(z) = log zeta(z) + sum_{p < cutoff} log(1 - p^-z) and
/// Mobius inversion P_Q(ns) = sum_k mu(k)/k log zeta_Q(kns); the logs are shared
/// across all (n, k) with the same product kn. Entries below n = 1 are zero.
template <class T>
class RoughPrimeZeta {
public:
    explicit RoughPrimeZeta(std::uint64_t cutoff) : small_(primes_up_to(cutoff - 1)), cutoff_(cutoff) {
        auto more = primes_up_to(2 * cutoff + 100);
        for (auto p : more)
            if (p >= cutoff) {
                first_rough_ = p;
                break;
            }
    }

    const std::vector<std::uint64_t>& small_primes() const { return small_; }
    std::uint64_t cutoff() const { return cutoff_; }
    /// Smallest prime >= cutoff.
    std::uint64_t first_rough_prime() const { return first_rough_; }

    /// Upper bound for |P_Q(z)| given Re z = sigma > 1: sum over m >= q of m^-sigma.
    double bound(double sigma) const {
        const double q = static_cast<double>(first_rough_);
        return std::pow(q, -sigma) * (1.0 + q / (sigma - 1.0));
    }

    /// v[n] = P_Q(n s) for 1 <= n <= max_n with n Re s > 1; smaller n give 0.
    std::vector<Complex<T>> multiples(const Complex<T>& s, std::size_t max_n, const ZetaConfig<T>& cfg = {}) const {
        using std::log;
        const double sigma = to_double(s.re);
        // log zeta_Q(m s) for m = 1..m_max; beyond m_max it is below tolerance.
        std::size_t m_max = max_n;
        {
            const double lq = std::log(static_cast<double>(first_rough_));
            const double need = -std::log(to_double(cfg.tolerance)) + 2.0;
            m_max = std::max<std::size_t>(max_n, static_cast<std::size_t>(need / (sigma * lq)) + 2);
        }
        std::vector<Complex<T>> x(small_.size()), xm(small_.size());
        for (std::size_t i = 0; i < small_.size(); ++i) {
            x[i] = pow_neg(T(log(T(small_[i]))), s);
            xm[i] = Complex<T>(T(1));
        }
        std::vector<Complex<T>> lz(m_max + 1);
        const double tol = to_double(cfg.tolerance);
        // zeta(ms) - 1 by Euler-Maclaurin with one cut N for every m; the head
        // terms n^{-ms} are running products of n^{-s}.
        const std::size_t big_n = detail::auto_terms(s * T(static_cast<long>(m_max)));
        std::vector<Complex<T>> base(big_n + 1), power(big_n + 1, Complex<T>(T(1)));
        for (std::size_t n = 2; n <= big_n; ++n) base[n] = pow_neg(T(log(T(n))), s);
        for (std::size_t m = 1; m <= m_max; ++m) {
            for (std::size_t i = 0; i < small_.size(); ++i) xm[i] *= x[i];
            for (std::size_t n = 2; n <= big_n; ++n) power[n] *= base[n];
            if (m * sigma <= 1.0) continue;
            if (bound(m * sigma) < tol * 1e-3) continue;  // negligible, stays 0
            const Complex<T> z = s * T(static_cast<long>(m));
            detail::EmParts<T> parts;
            for (std::size_t n = 2; n < big_n; ++n) parts.head += power[n];
            Complex<T> zm1;
            if (detail::em_corrections(z, big_n, power[big_n], cfg, parts))
                zm1 = parts.head + parts.pole / (z - Complex<T>(T(1))) + parts.rest;
            else
                zm1 = zeta_minus_one(z, cfg);
            Complex<T> acc = log1p(zm1);
            for (std::size_t i = 0; i < small_.size(); ++i) acc += log1p(-xm[i]);
            lz[m] = acc;
        }
        std::vector<Complex<T>> out(max_n + 1);
        for (std::size_t n = 1; n <= max_n; ++n) {
            if (n * sigma <= 1.0) continue;
            for (std::size_t k = 1; k * n <= m_max; ++k) {
                const int mu = mobius(k);
                if (mu != 0) out[n] += lz[k * n] * (T(mu) / T(k));
            }
        }
        return out;
    }

private:
    std::vector<std::uint64_t> small_;
    std::uint64_t cutoff_;
    std::uint64_t first_rough_ = 2;
};

/// Direct power sums sum_{cutoff <= p <= limit} p^{-ns} for n = 0..max_n.
///
/// Cost is one complex exponential per prime regardless of |Im s|, which makes
/// it the right tool far up a vertical line where Euler-Maclaurin for
/// zeta(kns) would need ~kn|t| terms.
class DirectPrimePowers {
public:
    DirectPrimePowers(std::uint64_t cutoff, std::uint64_t limit) : cutoff_(cutoff), limit_(limit) {
        for (auto p : primes_up_to(limit))
            if (p >= cutoff) logs_.push_back(std::log(static_cast<double>(p)));
    }

    std::uint64_t limit() const { return limit_; }

    std::vector<Complex<double>> multiples(const Complex<double>& s, std::size_t max_n) const {
        std::vector<Complex<double>> out(max_n + 1);
        for (double lp : logs_) {
            const Complex<double> x = pow_neg(lp, s);
            Complex<double> xn = x;
            for (std::size_t n = 1; n <= max_n; ++n) {
                out[n] += xn;
                xn *= x;
            }
        }
        return out;
    }

    /// Bound on the omitted primes: sum_{m > limit} m^-sigma <= limit^{1-sigma}/(sigma-1).
    double tail_bound(double sigma) const {
        const double l = static_cast<double>(limit_);
        return std::pow(l, 1.0 - sigma) / (sigma - 1.0);
    }

private:
    std::uint64_t cutoff_;
    std::uint64_t limit_;
    std::vector<double> logs_;
};

}  // namespace mvf
