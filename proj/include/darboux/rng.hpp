#pragma once

#include <cstdint>

namespace darboux {

/// Counter-based generator: draw n of stream `seed` is splitmix64(seed, n).
/// Platform-independent and free of hidden state, so a report can be
/// reproduced from (seed, counter) alone.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t n) const { return mix(seed_ + (n + 1) * 0x9e3779b97f4a7c15ULL); }

    std::uint64_t next() { return at(counter_++); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace darboux
