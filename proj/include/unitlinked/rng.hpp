#pragma once

#include <cmath>
#include <cstdint>

namespace unitlinked {

// Counter-based generation: every normal deviate is a pure function of
// (seed, path, driver, step), so path i step k sees the same numbers no
// matter how many workers run or in which order paths are filled.

namespace detail {

inline constexpr std::uint64_t kPhiloxMult = 0xD2B74407B1CE6E93ull;
inline constexpr std::uint64_t kPhiloxWeyl = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct Philox2x64Block {
    std::uint64_t x0;
    std::uint64_t x1;
};

// Philox2x64-10: ten rounds of multiply-hi/lo mixing over a 128-bit counter.
inline Philox2x64Block philox2x64(std::uint64_t c0, std::uint64_t c1,
                                  std::uint64_t key) {
    std::uint64_t x0 = c0;
    std::uint64_t x1 = c1;
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 prod =
            static_cast<unsigned __int128>(kPhiloxMult) * x0;
        const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        const std::uint64_t lo = static_cast<std::uint64_t>(prod);
        x0 = hi ^ key ^ x1;
        x1 = lo;
        key += kPhiloxWeyl;
    }
    return {x0, x1};
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint32_t driver) {
    return splitmix64(seed ^ (0x6A09E667F3BCC909ull *
                              (static_cast<std::uint64_t>(driver) + 1ull)));
}

}  // namespace detail

/// Standard normal deviate for Brownian driver `driver` of path `path` over
/// step `step`. Box-Muller on the Philox block; the first uniform is mapped
/// into (0, 1] so the log never sees zero.
inline double gaussian_stream(std::uint64_t seed, std::uint64_t path,
                              std::uint32_t driver, std::uint64_t step) {
    const detail::Philox2x64Block b =
        detail::philox2x64(step, path, detail::stream_key(seed, driver));
    const double u1 = (static_cast<double>(b.x0 >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(b.x1 >> 11) * 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace unitlinked
