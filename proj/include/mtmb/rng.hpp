// rng.hpp — seeded random streams with fixed, documented draw consumption.
//
// Every run owns a root seed; each consumer derives a named sub-stream from
// it, so adding a draw in one part of the code never shifts the sequence seen
// by another. Each primitive consumes a fixed number of engine outputs
// (uniforms and indices one, normals two), which makes draw-accounting
// contracts testable and replays exact.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mtmb {

inline constexpr double kPi = 3.14159265358979323846;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Raw engine output. One step.
    std::uint64_t next_u64() {
        ++steps_;
        return engine_();
    }

    /// Uniform in [0, 1). One step.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi). One step.
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    /// Uniform index in [0, n). One step. n must be positive.
    std::size_t index(std::size_t n) {
        if (n == 0)
            throw std::invalid_argument("RandomStream::index: n must be positive");
        return static_cast<std::size_t>(next_u64() % n);
    }

    /// True with probability p. One step.
    bool bernoulli(double p) {
        return uniform01() < p;
    }

    /// Standard normal via Box-Muller. Exactly two steps, no caching.
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    /// In-place Fisher-Yates; n-1 index draws. std::shuffle is
    /// implementation-defined, this is not.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Number of engine outputs consumed so far.
    std::uint64_t steps() const { return steps_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t steps_ = 0;
};

namespace detail {

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Named sub-stream of a root seed. Distinct names give decorrelated streams;
/// the same (seed, name) pair always gives the same stream.
inline RandomStream derive_stream(std::uint64_t root_seed, std::string_view name) {
    return RandomStream(detail::splitmix64(detail::splitmix64(root_seed) ^ detail::fnv1a64(name)));
}

} // namespace mtmb
