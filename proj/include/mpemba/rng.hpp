#pragma once

#include <cstdint>

namespace mpemba {

/// Counter-based generator: a splitmix64 stream whose starting point is a
/// hash of (seed, stream keys). Streams for different keys are independent
/// and reproducible regardless of the order they are consumed in.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t key1 = 0, std::uint64_t key2 = 0);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_uniform();

    /// Number of successes in `n` Bernoulli(p) trials.
    int binomial(int n, double p);

private:
    std::uint64_t state_;
};

}  // namespace mpemba
