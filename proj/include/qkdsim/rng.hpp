#pragma once

#include <cstdint>

namespace qkdsim {

// 64-bit finalizer used as the mixing core of the counter-based generator
// (SplitMix64 finalizer constants).
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/**
 * Counter-based random stream for one simulation round.
 *
 * Every draw is a pure function of (master_seed, round_index, draw_index):
 * the stream base is a hash of (seed, round) and each output word is the
 * SplitMix64 step at the current draw counter. Rounds can therefore be
 * executed in any order, on any number of workers, and reproduce the same
 * draws bit for bit.
 */
class RoundRng {
public:
    RoundRng(std::uint64_t master_seed, std::uint64_t round_index)
        : base_(mix64(master_seed ^ mix64(round_index + kGolden))) {}

    std::uint64_t next_word() { return mix64(base_ + kGolden * ++draw_); }

    // Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n) for small n (Lemire reduction).
    int next_below(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(next_word()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
    }

    std::uint64_t draws_consumed() const { return draw_; }

private:
    std::uint64_t base_;
    std::uint64_t draw_ = 0;
};

// Derived seed for sweep point `index` so grid points use decorrelated streams.
inline std::uint64_t derive_subseed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(mix64(master_seed) + kGolden * (index + 1));
}

} // namespace qkdsim
