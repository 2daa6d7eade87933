#pragma once

// Counter-based uniform stream: draw i of a stream keyed by `seed` is
// splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15) with key =
// splitmix64_mix(seed). Any draw can be computed without generating the ones
// before it, so work can be split across threads without changing results.

#include <cstdint>

namespace cogmc {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) noexcept : key_(splitmix64_mix(seed)) {}

    constexpr std::uint64_t bits(std::uint64_t index) const noexcept
    {
        return splitmix64_mix(key_ + (index + 1) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    constexpr double uniform(std::uint64_t index) const noexcept
    {
        return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
};

}  // namespace cogmc
