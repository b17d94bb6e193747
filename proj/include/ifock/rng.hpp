#pragma once

#include <complex>
#include <cstdint>

namespace ifock {

// splitmix64 generator. Output is fully determined by the seed and identical
// on every platform, which std:: distributions do not guarantee.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::complex<double> complex_in_box(double half_width) {
        const double re = uniform(-half_width, half_width);
        const double im = uniform(-half_width, half_width);
        return {re, im};
    }

private:
    std::uint64_t state_;
};

} // namespace ifock
