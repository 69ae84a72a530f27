#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <random>

// Small seeded generators for the property tests; every case is
// reproducible from the seed printed on failure.
namespace gen {

inline constexpr std::uint64_t kSeed = 0x5eed5ca7;
inline constexpr int kCases = 200;

class Source {
public:
    explicit Source(std::uint64_t seed = kSeed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    // Log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    bool coin() { return integer(0, 1) == 1; }

    template <class Range>
    const auto& pick(const Range& r) {
        return r[std::size_t(integer(0, int(std::size(r)) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

inline double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace gen
