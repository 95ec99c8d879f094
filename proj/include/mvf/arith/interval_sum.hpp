#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvf/arith/mult_fn.hpp"
#include "mvf/arith/sieve.hpp"
#include "mvf/core/double_double.hpp"
#include "mvf/core/rational.hpp"

namespace mvf {

/// f(n) = prod f(p^r) over the factorization; f(1) = 1.
inline Rational f_value(MultFn fn, const Factorization& fac) {
    Rational v(1);
    for (const auto& pp : fac.factors) v *= local_value(fn, pp.r);
    return v;
}

/// S(x; h) = sum over x < n <= x + h of f(n).
struct IntervalSum {
    MultFn fn{};
    std::uint64_t x = 0;
    std::uint64_t h = 0;
    Rational exact;
    double approx = 0.0;  ///< compensated floating mirror of the same sum
};

namespace detail {

/// Every local value of the four targets is 1/d for an integer d, so f(n) is
/// the reciprocal of a product of per-exponent denominators.
inline std::array<std::uint64_t, 64> denominator_table(MultFn fn) {
    std::array<std::uint64_t, 64> t{};
    for (unsigned k = 0; k < 64; ++k) {
        Rational v = local_value(fn, k);
        if (v.get_num() != 1 || !v.get_den().fits_ulong_p())
            throw std::logic_error("local value is not a unit fraction");
        t[k] = v.get_den().get_ui();
    }
    return t;
}

/// Open-addressed counter keyed by denominator (never 0).
class DenominatorCounter {
public:
    DenominatorCounter() : keys_(1024, 0), counts_(1024, 0) {}

    void add(std::uint64_t den, std::uint64_t count = 1) {
        std::size_t mask = keys_.size() - 1;
        std::size_t i = (den * 0x9E3779B97F4A7C15ull >> 20) & mask;
        while (keys_[i] != 0 && keys_[i] != den) i = (i + 1) & mask;
        if (keys_[i] == 0) {
            keys_[i] = den;
            if (++size_ * 2 > keys_.size()) {
                counts_[i] += count;
                grow();
                return;
            }
        }
        counts_[i] += count;
    }

    /// (denominator, count) pairs in increasing denominator order.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted() const {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i] != 0) out.emplace_back(keys_[i], counts_[i]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void grow() {
        auto old = sorted();
        keys_.assign(keys_.size() * 2, 0);
        counts_.assign(counts_.size() * 2, 0);
        size_ = 0;
        for (auto [d, c] : old) add(d, c);
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint64_t> counts_;
    std::size_t size_ = 0;
};

struct SegmentTally {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;
    DoubleDouble mirror;
};

inline Rational histogram_to_rational(const std::map<std::uint64_t, std::uint64_t>& hist) {
    BigInt lcm = 1;
    for (const auto& [den, count] : hist) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), bigint_from_u64(den).get_mpz_t());
    BigInt num = 0;
    for (const auto& [den, count] : hist) {
        BigInt part = lcm / bigint_from_u64(den);
        num += part * bigint_from_u64(count);
    }
    Rational q(num, lcm);
    q.canonicalize();
    return q;
}

}  // namespace detail

/// Exact interval sums for several functions in one sieve pass.
///
/// Each segment tallies how many n share each denominator; tallies are integer
/// counts, so the exact result is independent of segmentation and threading.
/// The floating mirror is merged in ascending segment order.
inline std::vector<IntervalSum> interval_sums(std::span<const MultFn> fns, std::uint64_t x,
                                              std::uint64_t h, const SieveConfig& config = {}) {
    if (h == 0) throw std::invalid_argument("interval_sum: h must be >= 1");
    if (fns.empty()) return {};
    if (x > max_sieve_value - h) throw capacity_error("x + h exceeds 2^63-1");
    const std::uint64_t lo = x + 1, hi = x + h;
    SegmentedSieve sieve(hi, config);

    std::vector<std::array<std::uint64_t, 64>> tables;
    for (MultFn fn : fns) tables.push_back(detail::denominator_table(fn));

    const std::uint64_t width = std::max<std::uint64_t>(1, config.segment_width);
    const std::uint64_t segments = (h + width - 1) / width;
    std::vector<std::vector<detail::SegmentTally>> tallies(segments);

    parallel_for(segments, config.threads, [&](std::size_t s) {
        const std::uint64_t a = lo + s * width;
        const std::uint64_t b = std::min(hi, a + width - 1);
        const std::size_t len = b - a + 1;
        std::vector<std::vector<std::uint64_t>> den(fns.size(), std::vector<std::uint64_t>(len, 1));
        sieve.factor(a, b, [&](std::uint64_t i, std::uint64_t, unsigned r) {
            for (std::size_t f = 0; f < fns.size(); ++f) den[f][i] *= tables[f][r];
        });
        auto& out = tallies[s];
        out.resize(fns.size());
        for (std::size_t f = 0; f < fns.size(); ++f) {
            detail::DenominatorCounter counter;
            DoubleDouble mirror;
            for (std::uint64_t d : den[f]) {
                counter.add(d);
                mirror.add(1.0 / static_cast<double>(d));
            }
            out[f].histogram = counter.sorted();
            out[f].mirror = mirror;
        }
    });

    std::vector<IntervalSum> result;
    for (std::size_t f = 0; f < fns.size(); ++f) {
        std::map<std::uint64_t, std::uint64_t> hist;
        DoubleDouble mirror;
        for (const auto& seg : tallies) {
            for (auto [d, c] : seg[f].histogram) hist[d] += c;
            mirror.add(seg[f].mirror);
        }
        result.push_back({fns[f], x, h, detail::histogram_to_rational(hist), mirror.value()});
    }
    return result;
}

inline IntervalSum interval_sum(MultFn fn, std::uint64_t x, std::uint64_t h,
                                const SieveConfig& config = {}) {
    MultFn one[1] = {fn};
    return interval_sums(one, x, h, config).front();
}

}  // namespace mvf
