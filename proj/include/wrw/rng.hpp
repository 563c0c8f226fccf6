#pragma once

#include <cstdint>

namespace wrw {

// splitmix64; advances `state` and returns the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic xoshiro256** with named streams derived from
// (seed, run_index, stream). std::uniform_int_distribution is avoided on
// purpose: its output is not pinned by the standard, and seeded runs must
// replay bit-exactly across toolchains.
class Rng {
public:
    Rng() : Rng(0, 0, 0) {}

    Rng(std::uint64_t seed, std::uint64_t run_index, std::uint64_t stream) {
        std::uint64_t s = seed;
        (void)splitmix64(s);
        s += 0x9e3779b97f4a7c15ull * (run_index + 1);
        (void)splitmix64(s);
        s += 0xd1b54a32d192ed03ull * (stream + 1);
        for (auto& word : state_) word = splitmix64(s);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, n). Lemire's multiply-shift with rejection, unbiased.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Stream ids for the independent per-run generators.
inline constexpr std::uint64_t kStreamWalk = 0;
inline constexpr std::uint64_t kStreamWaddle = 1;
inline constexpr std::uint64_t kStreamStart = 2;
inline constexpr std::uint64_t kStreamEmbed = 3;

}  // namespace wrw
