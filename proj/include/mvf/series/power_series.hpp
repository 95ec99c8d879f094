#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mvf/core/rational.hpp"

namespace mvf {

/// Truncated power series c0 + c1 X + ... + cM X^M with exact rational
/// coefficients. All operations truncate at the smaller operand order.
class PowerSeriesQ {
public:
    PowerSeriesQ() : c_(1) {}
    explicit PowerSeriesQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1);
    }

    static PowerSeriesQ zero(std::size_t order) { return PowerSeriesQ(std::vector<Rational>(order + 1)); }
    static PowerSeriesQ one(std::size_t order) {
        auto s = zero(order);
        s.c_[0] = 1;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const Rational& operator[](std::size_t k) const { return c_[k]; }
    Rational& operator[](std::size_t k) { return c_[k]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    PowerSeriesQ truncated(std::size_t order) const {
        std::vector<Rational> c(order + 1);
        for (std::size_t k = 0; k <= order && k < c_.size(); ++k) c[k] = c_[k];
        return PowerSeriesQ(std::move(c));
    }

    PowerSeriesQ& operator+=(const PowerSeriesQ& o) {
        shrink_to(o.order());
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    PowerSeriesQ& operator-=(const PowerSeriesQ& o) {
        shrink_to(o.order());
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    PowerSeriesQ& operator*=(const Rational& k) {
        for (auto& c : c_) c *= k;
        return *this;
    }

    friend PowerSeriesQ operator+(PowerSeriesQ a, const PowerSeriesQ& b) { return a += b; }
    friend PowerSeriesQ operator-(PowerSeriesQ a, const PowerSeriesQ& b) { return a -= b; }
    friend PowerSeriesQ operator*(PowerSeriesQ a, const Rational& k) { return a *= k; }
    friend PowerSeriesQ operator*(const Rational& k, PowerSeriesQ a) { return a *= k; }

    friend PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b) {
        const std::size_t m = std::min(a.order(), b.order());
        auto out = zero(m);
        for (std::size_t i = 0; i <= m; ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t j = 0; i + j <= m; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }

    friend bool operator==(const PowerSeriesQ& a, const PowerSeriesQ& b) { return a.c_ == b.c_; }

private:
    void shrink_to(std::size_t order) {
        if (order < this->order()) c_.resize(order + 1);
    }

    std::vector<Rational> c_;
};

/// Exact log of a series with constant term 1, from f * (log f)' = f'.
inline PowerSeriesQ series_log(const PowerSeriesQ& f) {
    if (f[0] != 1) throw std::invalid_argument("series_log: constant term must be 1");
    const std::size_t m = f.order();
    auto out = PowerSeriesQ::zero(m);
    for (std::size_t k = 1; k <= m; ++k) {
        Rational acc = Rational(static_cast<long>(k)) * f[k];
        for (std::size_t j = 1; j < k; ++j) acc -= Rational(static_cast<long>(j)) * out[j] * f[k - j];
        out[k] = acc / Rational(static_cast<long>(k));
    }
    return out;
}

/// Exact exp of a series with constant term 0, from E' = L' E.
inline PowerSeriesQ series_exp(const PowerSeriesQ& l) {
    if (l[0] != 0) throw std::invalid_argument("series_exp: constant term must be 0");
    const std::size_t m = l.order();
    auto out = PowerSeriesQ::zero(m);
    out[0] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k; ++j) acc += Rational(static_cast<long>(j)) * l[j] * out[k - j];
        out[k] = acc / Rational(static_cast<long>(k));
    }
    return out;
}

/// f^e for a rational exponent, f with constant term 1.
inline PowerSeriesQ series_pow(const PowerSeriesQ& f, const Rational& e) {
    return series_exp(series_log(f) * e);
}

/// -log(1 - X^step) = sum_{k>=1} X^{k step} / k, truncated at `order`.
inline PowerSeriesQ neg_log_one_minus(std::size_t order, std::size_t step = 1) {
    auto out = PowerSeriesQ::zero(order);
    for (std::size_t k = 1; k * step <= order; ++k) out[k * step] = Rational(1, static_cast<unsigned long>(k));
    return out;
}

}  // namespace mvf
