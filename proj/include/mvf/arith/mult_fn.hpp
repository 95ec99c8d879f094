#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mvf/core/rational.hpp"

namespace mvf {

/// The four multiplicative weights studied here. Each is determined by its
/// value on prime powers, which depends only on the exponent k.
enum class MultFn {
    InvTauSq,        ///< f1(n) = 1/tau(n^2)
    InvTauSquared,   ///< f2(n) = 1/tau(n)^2
    InvTwoOmega,     ///< f3(n) = 2^-omega(n)
    InvTwoBigOmega,  ///< f4(n) = 2^-Omega(n)
};

inline constexpr std::array<MultFn, 4> all_functions{
    MultFn::InvTauSq, MultFn::InvTauSquared, MultFn::InvTwoOmega, MultFn::InvTwoBigOmega};

/// f(p^k) as an exact rational; k = 0 gives 1.
inline Rational local_value(MultFn fn, unsigned k) {
    if (k == 0) return Rational(1);
    switch (fn) {
        case MultFn::InvTauSq: return make_rational(1, 2ul * k + 1);
        case MultFn::InvTauSquared: return make_rational(1, (k + 1ul) * (k + 1ul));
        case MultFn::InvTwoOmega: return make_rational(1, 2);
        case MultFn::InvTwoBigOmega: {
            Rational r(1);
            mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), k);
            return r;
        }
    }
    throw std::logic_error("unknown MultFn");
}

inline std::string_view tag(MultFn fn) {
    switch (fn) {
        case MultFn::InvTauSq: return "f1";
        case MultFn::InvTauSquared: return "f2";
        case MultFn::InvTwoOmega: return "f3";
        case MultFn::InvTwoBigOmega: return "f4";
    }
    return "?";
}

inline std::string_view describe(MultFn fn) {
    switch (fn) {
        case MultFn::InvTauSq: return "1/tau(n^2)";
        case MultFn::InvTauSquared: return "1/tau(n)^2";
        case MultFn::InvTwoOmega: return "2^-omega(n)";
        case MultFn::InvTwoBigOmega: return "2^-Omega(n)";
    }
    return "?";
}

inline std::optional<MultFn> parse_fn(std::string_view text) {
    for (MultFn fn : all_functions)
        if (tag(fn) == text) return fn;
    return std::nullopt;
}

/// A prime-power law k -> f(p^k), independent of p. Lets the series and
/// constants machinery run on weights outside the four targets (1/tau).
struct LocalRule {
    std::string name;
    std::function<Rational(unsigned)> value;
};

inline LocalRule rule_of(MultFn fn) {
    return {std::string(tag(fn)), [fn](unsigned k) { return local_value(fn, k); }};
}

/// 1/tau(n): tau(p^k) = k + 1.
inline LocalRule inv_tau_rule() {
    return {"inv_tau", [](unsigned k) { return make_rational(1, k + 1ul); }};
}

}  // namespace mvf
