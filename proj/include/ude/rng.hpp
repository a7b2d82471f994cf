#pragma once

#include <cstdint>
#include <random>

namespace ude {

// Seeded random stream. All draws are derived from raw 64-bit engine output
// with fixed transforms, so sequences are identical across standard library
// implementations (std:: distributions are not).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    // Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n);
    double normal();
    double cauchy();

    // Independent stream derived deterministically from (seed, key).
    RngStream substream(std::uint64_t key) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ude
