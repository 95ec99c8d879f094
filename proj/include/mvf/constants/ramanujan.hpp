#pragma once

#include <cmath>
#include <cstdint>

#include "mvf/arith/primes.hpp"
#include "mvf/constants/pi_expansion.hpp"
#include "mvf/zeta/prime_zeta.hpp"

namespace mvf {

/// The constant in sum_{n<=x} 1/tau(n) ~ A0 x / sqrt(ln x).
struct RamanujanA0 {
    Wide product;           ///< (1/sqrt pi) prod_p sqrt(p(p-1)) ln(p/(p-1))
    double product_bound = 0.0;
    Wide euler_form;        ///< K_0 of the 1/tau Euler form
    double euler_form_bound = 0.0;
    std::uint64_t prime_limit = 0;
};

/// sqrt(p(p-1)) ln(p/(p-1)), the local factor at p.
inline Wide ramanujan_local_factor(std::uint64_t p) {
    using std::log;
    using std::sqrt;
    const Wide x = Wide(1) / Wide(p);
    // ln(p/(p-1)) = -log1p(-1/p)
    return sqrt(Wide(p) * Wide(p - 1)) * -boost::multiprecision::log1p(-x);
}

struct A0Product {
    Wide value;
    double tail_bound = 0.0;
};

/// Log-domain product over p <= limit with the second-order tail: every
/// local log is -1/(24 p^2) + O(p^-3), so the primes above the limit
/// contribute -(P(2) - sum_{p<=limit} p^-2)/24 plus at most sum_{m>limit} m^-3.
inline A0Product ramanujan_A0_product(std::uint64_t limit) {
    using std::exp;
    using std::log;
    using std::sqrt;
    if (limit < 10) throw std::invalid_argument("ramanujan_A0_product: limit must be at least 10");
    Wide log_sum = 0, inv_sq = 0;
    for (auto p : cached_primes_up_to(limit)) {
        log_sum += log(ramanujan_local_factor(p));
        inv_sq += Wide(1) / (Wide(p) * Wide(p));
    }
    const Wide tail_p2 = prime_zeta(Wide(2)) - inv_sq;
    log_sum -= tail_p2 / Wide(24);
    const double l = static_cast<double>(limit);
    A0Product out;
    out.value = exp(log_sum) / sqrt(pi<Wide>());
    // |third and higher order| <= sum_{m > limit} m^-3 (1 + 2/m) and exp is 1-Lipschitz near 0.6
    out.tail_bound = 0.5 / (l * l) * (1.0 + 2.0 / l) * to_double(out.value) + 1e-50;
    return out;
}

/// The 1/tau rule has F(s) = zeta(s)^{1/2} zeta(2s)^{-1/24} G(s), so A0 = K_0.
inline A0Product ramanujan_A0_euler_form(const LnGConfig& cfg = {}) {
    const auto e = pi_taylor(std::vector<LocalRule>{inv_tau_rule()}, 0, TaylorConfig{.lng = cfg})[0];
    return {e.K[0], e.error_budget};
}

inline RamanujanA0 ramanujan_A0(std::uint64_t limit = 1000000) {
    RamanujanA0 out;
    const auto prod = ramanujan_A0_product(limit);
    const auto ef = ramanujan_A0_euler_form();
    out.product = prod.value;
    out.product_bound = prod.tail_bound;
    out.euler_form = ef.value;
    out.euler_form_bound = ef.tail_bound;
    out.prime_limit = limit;
    return out;
}

}  // namespace mvf
