#pragma once

#include <cstdint>
#include <random>

namespace ccrsim {

/// Seedable random stream with distribution code that does not depend on the
/// standard library implementation, so seeded runs reproduce across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);
    int uniform_int(int n) { return static_cast<int>(uniform_index(static_cast<std::uint64_t>(n))); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (one variate per call).
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Exponential with the given mean.
    double exponential(double mean = 1.0);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent sub-stream seed for a named purpose.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

namespace streams {
inline constexpr std::uint64_t kScenario = 0x5ce7a210ULL;
inline constexpr std::uint64_t kMobility = 0x30b11e7ULL;
inline constexpr std::uint64_t kChannel = 0xc4a77e1ULL;
inline constexpr std::uint64_t kTrajectory = 0x7a7ec7ULL;
inline constexpr std::uint64_t kPolicy = 0x9011c7ULL;
}  // namespace streams

}  // namespace ccrsim
