#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mvf/core/errors.hpp"

namespace mvf {

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// All primes <= limit by an odd-only Eratosthenes sieve.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    out.push_back(2);
    std::uint64_t half = (limit - 1) / 2;  // index i <-> 2i + 3
    std::vector<bool> composite(half, false);
    for (std::uint64_t i = 0; i < half; ++i) {
        if (composite[i]) continue;
        std::uint64_t p = 2 * i + 3;
        out.push_back(p);
        for (std::uint64_t j = (p * p - 3) / 2; j < half; j += p) composite[j] = true;
    }
    return out;
}

/// On-disk prime cache: "MVFP1", u64 limit, u64 count, count x u64 primes,
/// all little-endian. Written atomically (temp file + rename).
namespace prime_cache {

inline constexpr char magic[5] = {'M', 'V', 'F', 'P', '1'};

inline std::filesystem::path default_path() {
    const char* dir = std::getenv("MVF_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::filesystem::path(dir) / "primes.mvfp1";
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline bool get_u64(std::istream& is, std::uint64_t& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return true;
}

/// Primes <= limit from the cache, or empty if the cache is absent, corrupt,
/// or was built for a smaller limit.
inline std::vector<std::uint64_t> load(const std::filesystem::path& path, std::uint64_t limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    char head[5];
    if (!in.read(head, 5) || std::memcmp(head, magic, 5) != 0) return {};
    std::uint64_t stored_limit = 0, count = 0;
    if (!get_u64(in, stored_limit) || !get_u64(in, count) || stored_limit < limit) return {};
    std::vector<std::uint64_t> primes;
    primes.reserve(count);
    std::uint64_t p = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (!get_u64(in, p)) return {};
        if (p > limit) break;
        primes.push_back(p);
    }
    return primes;
}

inline void store(const std::filesystem::path& path, std::uint64_t limit,
                  const std::vector<std::uint64_t>& primes) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(static_cast<unsigned long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;  // cache is optional
        out.write(magic, 5);
        put_u64(out, limit);
        put_u64(out, primes.size());
        for (auto p : primes) put_u64(out, p);
        if (!out) {
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace prime_cache

/// Primes <= limit, served from MVF_CACHE_DIR when a large-enough table exists.
inline std::vector<std::uint64_t> cached_primes_up_to(std::uint64_t limit) {
    auto path = prime_cache::default_path();
    if (!path.empty()) {
        auto hit = prime_cache::load(path, limit);
        if (!hit.empty() || limit < 2) return hit;
    }
    auto primes = primes_up_to(limit);
    if (!path.empty()) prime_cache::store(path, limit, primes);
    return primes;
}

}  // namespace mvf
