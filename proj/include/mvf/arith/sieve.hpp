#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvf/arith/primes.hpp"
#include "mvf/core/errors.hpp"
#include "mvf/core/parallel.hpp"

namespace mvf {

struct PrimePower {
    std::uint64_t p = 0;
    unsigned r = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = prod p^r over `factors`, primes strictly increasing. n = 1 has no factors.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;

    /// Product of the prime powers, or 0 on 64-bit overflow.
    std::uint64_t product() const {
        unsigned __int128 acc = 1;
        for (const auto& f : factors)
            for (unsigned i = 0; i < f.r; ++i) {
                acc *= f.p;
                if (acc > std::numeric_limits<std::uint64_t>::max()) return 0;
            }
        return static_cast<std::uint64_t>(acc);
    }
};

inline constexpr std::uint64_t max_sieve_value = (std::uint64_t{1} << 63) - 1;

struct SieveConfig {
    std::uint64_t segment_width = std::uint64_t{1} << 20;
    /// Largest range sieve_segment will materialize as Factorization records.
    std::uint64_t max_records = std::uint64_t{1} << 24;
    /// Base primes are generated up to sqrt(hi); this caps that table.
    std::uint64_t max_base_prime = 100'000'000;
    unsigned threads = default_threads();
};

/// Segmented smallest-prime-factor sieve over [lo, hi] with base primes <= sqrt(hi).
///
/// Each odd base prime carries its inverse mod 2^64, so divisibility tests and
/// exact quotients are multiplications: m is divisible by p iff m * inv <= max/p.
class SegmentedSieve {
public:
    explicit SegmentedSieve(std::uint64_t hi_max, SieveConfig config = {})
        : config_(config), hi_max_(hi_max) {
        if (hi_max > max_sieve_value)
            throw capacity_error("sieve upper bound " + std::to_string(hi_max) + " exceeds 2^63-1");
        std::uint64_t root = isqrt(hi_max);
        if (root > config_.max_base_prime)
            throw capacity_error("sqrt(" + std::to_string(hi_max) +
                                 ") exceeds the base-prime budget " +
                                 std::to_string(config_.max_base_prime));
        for (std::uint64_t p : cached_primes_up_to(root)) base_.push_back(make_base(p));
    }

    const SieveConfig& config() const { return config_; }
    std::uint64_t hi_max() const { return hi_max_; }
    std::size_t base_prime_count() const { return base_.size(); }

    /// Calls visit(index, p, r) for every prime power p^r || n, n = lo + index,
    /// in increasing p for each n. Requires 1 <= lo <= hi <= hi_max.
    template <class Visit>
    void factor(std::uint64_t lo, std::uint64_t hi, Visit&& visit) const {
        check_range(lo, hi);
        const std::uint64_t len = hi - lo + 1;
        std::vector<std::uint64_t> rem(len);
        for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
        const std::uint64_t root = isqrt(hi);

        for (const auto& bp : base_) {
            if (bp.p > root) break;
            std::uint64_t first = lo % bp.p == 0 ? lo : lo + (bp.p - lo % bp.p);
            if (bp.p == 2) {
                for (std::uint64_t n = first; n <= hi; n += 2) {
                    auto i = n - lo;
                    auto r = static_cast<unsigned>(std::countr_zero(rem[i]));
                    rem[i] >>= r;
                    visit(i, std::uint64_t{2}, r);
                }
                continue;
            }
            for (std::uint64_t n = first; n <= hi; n += bp.p) {
                auto i = n - lo;
                std::uint64_t q = rem[i] * bp.inv;
                unsigned r = 1;
                for (std::uint64_t t = q * bp.inv; t <= bp.lim; t = q * bp.inv) {
                    q = t;
                    ++r;
                }
                rem[i] = q;
                visit(i, bp.p, r);
            }
        }
        for (std::uint64_t i = 0; i < len; ++i)
            if (rem[i] > 1) visit(i, rem[i], 1u);
    }

    /// One complete Factorization per n in [lo, hi], ascending.
    std::vector<Factorization> segment(std::uint64_t lo, std::uint64_t hi) const {
        if (hi < lo) throw std::invalid_argument("sieve_segment: hi < lo");
        if (hi - lo + 1 > config_.max_records)
            throw capacity_error("segment of " + std::to_string(hi - lo + 1) +
                                 " records exceeds budget " + std::to_string(config_.max_records));
        std::vector<Factorization> out(hi - lo + 1);
        for (std::uint64_t i = 0; i < out.size(); ++i) out[i].n = lo + i;
        for (std::uint64_t start = lo; start <= hi;) {
            std::uint64_t stop = std::min(hi, start + config_.segment_width - 1);
            const std::uint64_t offset = start - lo;
            factor(start, stop, [&](std::uint64_t i, std::uint64_t p, unsigned r) {
                out[offset + i].factors.push_back({p, r});
            });
            if (stop == hi) break;
            start = stop + 1;
        }
        return out;
    }

private:
    struct BasePrime {
        std::uint64_t p;
        std::uint64_t inv;  // p^-1 mod 2^64 (odd p)
        std::uint64_t lim;  // floor((2^64 - 1) / p)
    };

    static BasePrime make_base(std::uint64_t p) {
        if (p == 2) return {2, 0, 0};
        std::uint64_t inv = p;  // Newton: each step doubles the correct low bits
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        return {p, inv, std::numeric_limits<std::uint64_t>::max() / p};
    }

    void check_range(std::uint64_t lo, std::uint64_t hi) const {
        if (lo == 0) throw std::invalid_argument("sieve range must start at 1 or above");
        if (hi < lo) throw std::invalid_argument("sieve range: hi < lo");
        if (hi > hi_max_)
            throw capacity_error("sieve range end " + std::to_string(hi) +
                                 " beyond prepared bound " + std::to_string(hi_max_));
    }

    SieveConfig config_;
    std::uint64_t hi_max_;
    std::vector<BasePrime> base_;
};

/// Factorizations of every n in [lo, hi].
inline std::vector<Factorization> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                                const SieveConfig& config = {}) {
    if (hi < lo) throw std::invalid_argument("sieve_segment: hi < lo");
    if (lo == 0) throw std::invalid_argument("sieve_segment: lo must be >= 1");
    if (hi - lo + 1 > config.max_records)
        throw capacity_error("segment of " + std::to_string(hi - lo + 1) +
                             " records exceeds budget " + std::to_string(config.max_records));
    return SegmentedSieve(hi, config).segment(lo, hi);
}

}  // namespace mvf
