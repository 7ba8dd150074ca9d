// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace docguard {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic random source. All randomness in the library flows through
/// this wrapper so that results depend only on the seeds handed in; the
/// bounded draws below avoid std::uniform_int_distribution, whose output is
/// not pinned down by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error("Rng::below: empty range");
        // rejection sampling keeps the draw exactly uniform
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = gen_();
        while (r >= limit) r = gen_();
        return r % n;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    /// Uniform double in [0, 1).
    double unit() { return (gen_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices out of [0, n), in selection order.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        if (k > n) throw Error("Rng::sample_indices: k exceeds population");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + index(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 gen_;
};

/// RFC 3339 timestamp in UTC, second precision, e.g. "2026-03-01T09:30:00Z".
inline std::string rfc3339_utc(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace docguard
