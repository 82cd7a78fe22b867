#include "mpemba/rng.hpp"

#include <stdexcept>

namespace mpemba {

namespace {

// splitmix64 finalizer; bijective, good avalanche.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t key1, std::uint64_t key2)
    : state_(mix(mix(mix(seed) ^ key1) ^ key2)) {}

std::uint64_t CounterRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double CounterRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int CounterRng::binomial(int n, double p) {
    if (n < 0 || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("binomial requires n >= 0 and p in [0, 1]");
    }
    if (p == 0.0) return 0;
    if (p == 1.0) return n;
    int k = 0;
    for (int i = 0; i < n; ++i) {
        if (next_uniform() < p) ++k;
    }
    return k;
}

}  // namespace mpemba
