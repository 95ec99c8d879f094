#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <utility>
#include <vector>

namespace mvf {

/// Fixed-order Gauss-Legendre rule on [a, b]; f may return any vector-space type.
template <unsigned Points, class F>
auto gauss_legendre(F&& f, double a, double b) {
    using Rule = boost::math::quadrature::gauss<double, Points>;
    const auto& x = Rule::abscissa();
    const auto& wt = Rule::weights();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    // boost stores non-negative abscissae; odd orders include x = 0 first
    using R = decltype(f(mid));
    R acc = (Points % 2 == 1) ? f(mid) * wt[0] : R{};
    for (std::size_t i = (Points % 2 == 1) ? 1 : 0; i < x.size(); ++i) {
        acc = acc + f(mid + half * x[i]) * wt[i];
        acc = acc + f(mid - half * x[i]) * wt[i];
    }
    return acc * half;
}

/// The (node, weight) pairs of the same rule, already scaled to [a, b].
template <unsigned Points>
std::vector<std::pair<double, double>> gauss_nodes(double a, double b) {
    using Rule = boost::math::quadrature::gauss<double, Points>;
    const auto& x = Rule::abscissa();
    const auto& wt = Rule::weights();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    std::vector<std::pair<double, double>> out;
    if (Points % 2 == 1) out.emplace_back(mid, wt[0] * half);
    for (std::size_t i = (Points % 2 == 1) ? 1 : 0; i < x.size(); ++i) {
        out.emplace_back(mid - half * x[i], wt[i] * half);
        out.emplace_back(mid + half * x[i], wt[i] * half);
    }
    return out;
}

}  // namespace mvf
