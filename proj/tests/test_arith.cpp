#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <random>

#include "mvf/arith/interval_sum.hpp"
#include "mvf/arith/mult_fn.hpp"
#include "mvf/arith/primes.hpp"
#include "mvf/arith/sieve.hpp"

using namespace mvf;

namespace {

Factorization trial_factor(std::uint64_t n) {
    Factorization f;
    f.n = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned r = 0;
        while (n % p == 0) n /= p, ++r;
        if (r) f.factors.push_back({p, r});
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) c += (d * d == n) ? 1 : 2;
    return c;
}

Rational oracle(MultFn fn, std::uint64_t n) {
    switch (fn) {
        case MultFn::InvTauSq: return make_rational(1, divisor_count(n * n));
        case MultFn::InvTauSquared: {
            const auto t = divisor_count(n);
            return make_rational(1, t * t);
        }
        case MultFn::InvTwoOmega:
        case MultFn::InvTwoBigOmega: {
            unsigned omega = 0, big = 0;
            for (const auto& pp : trial_factor(n).factors) omega += 1, big += pp.r;
            const unsigned e = fn == MultFn::InvTwoOmega ? omega : big;
            return Rational(1) / Rational(bigint_from_u64(std::uint64_t{1} << e));
        }
    }
    return Rational(0);
}

Factorization factor_one(std::uint64_t n) { return sieve_segment(n, n).front(); }

}  // namespace

TEST(Sieve, TwelveAndOne) {
    const auto twelve = sieve_segment(12, 12);
    ASSERT_EQ(twelve.size(), 1u);
    EXPECT_EQ(twelve[0].n, 12u);
    EXPECT_EQ(twelve[0].factors, (std::vector<PrimePower>{{2, 2}, {3, 1}}));
    const auto one = sieve_segment(1, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].n, 1u);
    EXPECT_TRUE(one[0].factors.empty());
}

TEST(Sieve, LargeWindowIsComplete) {
    const std::uint64_t lo = 10'000'000'000ull, hi = lo + 100'000;
    const auto recs = sieve_segment(lo, hi);
    ASSERT_EQ(recs.size(), 100'001u);
    std::mt19937_64 rng(7);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        ASSERT_EQ(recs[i].n, lo + i);
        ASSERT_EQ(recs[i].product(), recs[i].n);
        for (std::size_t j = 1; j < recs[i].factors.size(); ++j)
            ASSERT_LT(recs[i].factors[j - 1].p, recs[i].factors[j].p);
    }
    for (int k = 0; k < 1000; ++k) {
        const auto& r = recs[rng() % recs.size()];
        EXPECT_EQ(r.factors, trial_factor(r.n).factors) << r.n;
    }
}

TEST(Sieve, Errors) {
    EXPECT_THROW(sieve_segment(10, 9), std::invalid_argument);
    EXPECT_THROW(sieve_segment(0, 9), std::invalid_argument);
    SieveConfig small;
    small.max_records = 100;
    EXPECT_THROW(sieve_segment(1, 1000, small), capacity_error);
    EXPECT_THROW(sieve_segment(1, max_sieve_value + 1), capacity_error);
}

TEST(FValue, TwelveAndOne) {
    const auto f12 = factor_one(12);
    EXPECT_EQ(f_value(MultFn::InvTauSq, f12), make_rational(1, 15));
    EXPECT_EQ(f_value(MultFn::InvTauSquared, f12), make_rational(1, 36));
    EXPECT_EQ(f_value(MultFn::InvTwoOmega, f12), make_rational(1, 4));
    EXPECT_EQ(f_value(MultFn::InvTwoBigOmega, f12), make_rational(1, 8));
    for (MultFn fn : all_functions) EXPECT_EQ(f_value(fn, factor_one(1)), Rational(1));
}

TEST(FValue, LocalValues) {
    for (unsigned k = 1; k < 10; ++k) {
        EXPECT_EQ(local_value(MultFn::InvTauSq, k), make_rational(1, 2 * k + 1));
        EXPECT_EQ(local_value(MultFn::InvTauSquared, k), make_rational(1, (k + 1) * (k + 1)));
        EXPECT_EQ(local_value(MultFn::InvTwoOmega, k), make_rational(1, 2));
        EXPECT_EQ(local_value(MultFn::InvTwoBigOmega, k), make_rational(1, 1ul << k));
    }
    for (MultFn fn : all_functions) EXPECT_EQ(local_value(fn, 0), Rational(1));
}

TEST(FValue, MatchesBruteForceOracle) {
    const auto recs = sieve_segment(1, 10'000);
    for (const auto& r : recs)
        for (MultFn fn : all_functions) ASSERT_EQ(f_value(fn, r), oracle(fn, r.n)) << r.n;
}

TEST(FValue, MultiplicativeOnCoprimePairs) {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 300) {
        const std::uint64_t m = 1 + rng() % 1'000'000, n = 1 + rng() % 1'000'000;
        if (std::gcd(m, n) != 1) continue;
        ++checked;
        const auto fm = factor_one(m), fn_ = factor_one(n), fmn = factor_one(m * n);
        for (MultFn fn : all_functions)
            ASSERT_EQ(f_value(fn, fmn), f_value(fn, fm) * f_value(fn, fn_)) << m << " " << n;
    }
}

TEST(FValue, BoundsAndOrdering) {
    for (const auto& r : sieve_segment(1, 50'000)) {
        for (MultFn fn : all_functions) {
            const auto v = f_value(fn, r);
            ASSERT_GT(v, 0);
            ASSERT_LE(v, 1);
        }
        ASSERT_LE(f_value(MultFn::InvTwoBigOmega, r), f_value(MultFn::InvTwoOmega, r));
    }
}

TEST(IntervalSum, SmallExamples) {
    EXPECT_EQ(interval_sum(MultFn::InvTauSq, 0, 5).exact, make_rational(11, 5));
    EXPECT_EQ(interval_sum(MultFn::InvTwoOmega, 0, 6).exact, make_rational(13, 4));
    EXPECT_EQ(interval_sum(MultFn::InvTwoBigOmega, 0, 6).exact, Rational(3));
}

TEST(IntervalSum, MatchesDirectSum) {
    const std::uint64_t x = 123'456, h = 5'000;
    const auto recs = sieve_segment(x + 1, x + h);
    for (MultFn fn : all_functions) {
        Rational direct(0);
        for (const auto& r : recs) direct += f_value(fn, r);
        const auto s = interval_sum(fn, x, h);
        EXPECT_EQ(s.exact, direct);
        EXPECT_NEAR(s.approx, to_double(s.exact), 1e-12 * to_double(s.exact));
    }
}

TEST(IntervalSum, SplitConsistency) {
    const std::uint64_t x = 987'654'321, h1 = 70'001, h2 = 33'333;
    for (MultFn fn : all_functions) {
        const auto whole = interval_sum(fn, x, h1 + h2).exact;
        EXPECT_EQ(whole, interval_sum(fn, x, h1).exact + interval_sum(fn, x + h1, h2).exact);
    }
}

TEST(IntervalSum, IndependentOfSegmentationAndThreads) {
    const std::uint64_t x = 1'000'000, h = 300'000;
    SieveConfig a, b;
    a.threads = 1;
    b.threads = 4;
    b.segment_width = 4'099;
    const auto sa = interval_sums(all_functions, x, h, a);
    const auto sb = interval_sums(all_functions, x, h, b);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        EXPECT_EQ(sa[i].exact, sb[i].exact);
        EXPECT_EQ(sa[i].fn, all_functions[i]);
    }
}

TEST(IntervalSum, Errors) {
    EXPECT_THROW(interval_sum(MultFn::InvTauSq, 0, 0), std::invalid_argument);
    EXPECT_THROW(interval_sum(MultFn::InvTauSq, max_sieve_value, 1), capacity_error);
}

TEST(MultFnTags, ParseRoundTrip) {
    for (MultFn fn : all_functions) EXPECT_EQ(parse_fn(tag(fn)), fn);
    EXPECT_FALSE(parse_fn("f9").has_value());
}

TEST(PrimeCache, RoundTripAndCorruption) {
    const auto dir = std::filesystem::temp_directory_path() / "mvf_cache_test";
    std::filesystem::remove_all(dir);
    ::setenv("MVF_CACHE_DIR", dir.c_str(), 1);
    const auto fresh = cached_primes_up_to(100'000);
    ASSERT_TRUE(std::filesystem::exists(prime_cache::default_path()));
    EXPECT_EQ(prime_cache::load(prime_cache::default_path(), 1'000), primes_up_to(1'000));
    EXPECT_TRUE(prime_cache::load(prime_cache::default_path(), 200'000).empty());
    EXPECT_EQ(cached_primes_up_to(100'000), fresh);
    EXPECT_EQ(fresh.size(), 9'592u);
    {
        std::ofstream bad(prime_cache::default_path(), std::ios::binary | std::ios::trunc);
        bad << "garbage";
    }
    EXPECT_EQ(cached_primes_up_to(100'000), fresh);
    ::unsetenv("MVF_CACHE_DIR");
    std::filesystem::remove_all(dir);
}
