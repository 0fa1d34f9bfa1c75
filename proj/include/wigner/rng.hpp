/*
 * rng.hpp — counter-based random streams for reproducible Monte Carlo.
 *
 * Every draw is a pure function of (seed, stream, trial, i, j, counter):
 * the generator carries no hidden global state, so sampling the same
 * logical object from different worker threads, in any order, yields
 * identical values. Streams are separated by a purpose tag so that e.g.
 * row-sum resampling never overlaps the matrix-entry streams.
 *
 * The mixer is the SplitMix64 finalizer applied to a running hash of the
 * key words; output quality is ample for Monte Carlo use.
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace wigner {

// Purpose tags keeping logical random streams disjoint.
enum class Stream : std::uint64_t {
    matrix_entry = 0x01,
    row_sum = 0x02,
    survival = 0x03,
    spectral_conc = 0x04,
    property_pair = 0x05,
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t absorb(std::uint64_t h, std::uint64_t word) {
    return mix64(h + 0x9e3779b97f4a7c15ull + word);
}

} // namespace detail

class CounterRng {
public:
    CounterRng(std::uint64_t seed, Stream stream, std::uint64_t trial,
               std::uint64_t i, std::uint64_t j)
        : base_(derive_base(seed, stream, trial, i, j)) {}

    std::uint64_t next_u64() {
        return detail::mix64(base_ + 0x9e3779b97f4a7c15ull * ++counter_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double u01_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(u01_pos()));
        const double theta = 6.283185307179586476925286766559 * u01();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // +1 or -1 with equal probability.
    double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
    static std::uint64_t derive_base(std::uint64_t seed, Stream stream,
                                     std::uint64_t trial, std::uint64_t i,
                                     std::uint64_t j) {
        std::uint64_t h = detail::absorb(seed, static_cast<std::uint64_t>(stream));
        h = detail::absorb(h, trial);
        h = detail::absorb(h, (i << 32) ^ j);
        return h;
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace wigner
