#pragma once

#include <cmath>
#include <ostream>

namespace mvf {

/// Minimal complex arithmetic over an arbitrary real type.
///
/// std::complex<T> is only specified for float/double/long double, and the
/// constants pipeline needs the same code to run on an MPFR-backed real.
template <class T>
struct Complex {
    T re{};
    T im{};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        // Smith's algorithm
        using std::abs;
        if (abs(o.re) >= abs(o.im)) {
            T ratio = o.im / o.re;
            T den = o.re + o.im * ratio;
            T r = (re + im * ratio) / den;
            im = (im - re * ratio) / den;
            re = std::move(r);
        } else {
            T ratio = o.re / o.im;
            T den = o.re * ratio + o.im;
            T r = (re * ratio + im) / den;
            im = (im * ratio - re) / den;
            re = std::move(r);
        }
        return *this;
    }
    Complex& operator*=(const T& k) {
        re *= k;
        im *= k;
        return *this;
    }
    Complex& operator/=(const T& k) {
        re /= k;
        im /= k;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const T& k) { return a *= k; }
    friend Complex operator*(const T& k, Complex a) { return a *= k; }
    friend Complex operator/(Complex a, const T& k) { return a /= k; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
        return os << '(' << z.re << ',' << z.im << ')';
    }
};

template <class T>
Complex<T> conj(const Complex<T>& z) {
    return {z.re, -z.im};
}

template <class T>
T norm(const Complex<T>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class T>
T abs(const Complex<T>& z) {
    using std::hypot;
    return hypot(z.re, z.im);
}

template <class T>
T arg(const Complex<T>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

template <class T>
Complex<T> polar(const T& r, const T& theta) {
    using std::cos;
    using std::sin;
    return {r * cos(theta), r * sin(theta)};
}

template <class T>
Complex<T> exp(const Complex<T>& z) {
    using std::exp;
    return polar<T>(exp(z.re), z.im);
}

/// Principal logarithm.
template <class T>
Complex<T> log(const Complex<T>& z) {
    using std::log;
    return {log(abs(z)), arg(z)};
}

/// log(1 + z) without cancellation for small |z|.
template <class T>
Complex<T> log1p(const Complex<T>& z) {
    using std::abs;
    using std::log1p;
    using std::atan2;
    if (abs(z.re) + abs(z.im) > T(0.25)) return log(Complex<T>(T(1) + z.re, z.im));
    // |1+z|^2 - 1 = 2 re + re^2 + im^2
    T m = z.re * (T(2) + z.re) + z.im * z.im;
    return {log1p(m) / T(2), atan2(z.im, T(1) + z.re)};
}

/// Principal branch z^e for a real exponent.
template <class T>
Complex<T> pow(const Complex<T>& z, const T& e) {
    using std::pow;
    return polar<T>(pow(abs(z), e), arg(z) * e);
}

/// base^(-s) for a positive real base, given ln(base).
template <class T>
Complex<T> pow_neg(const T& log_base, const Complex<T>& s) {
    using std::exp;
    return polar<T>(exp(-s.re * log_base), -s.im * log_base);
}

}  // namespace mvf
