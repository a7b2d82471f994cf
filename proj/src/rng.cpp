#include "ude/rng.hpp"

#include <cmath>
#include <numbers>

namespace ude {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double RngStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::index(std::size_t n)
{
    // Rejection sampling removes modulo bias.
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % range);
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % range);
}

double RngStream::normal()
{
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_normal_ = true;
    return radius * std::cos(angle);
}

double RngStream::cauchy()
{
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return std::tan(std::numbers::pi * (u - 0.5));
}

RngStream RngStream::substream(std::uint64_t key) const
{
    return RngStream(splitmix64(seed_ ^ splitmix64(key + 0x632be59bd9b4e019ULL)));
}

}  // namespace ude
