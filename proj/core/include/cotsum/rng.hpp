#pragma once

#include <cmath>
#include <cstdint>
#include "cotsum/int128.hpp"

namespace cotsum {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded from a splitmix64 chain. One instance per Monte Carlo
// sample, keyed by (seed, N, sample index), so results do not depend on how
// samples are distributed over workers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }
    static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        std::uint64_t sm = seed;
        std::uint64_t k = splitmix64(sm) ^ (a * 0xd1342543de82ef95ULL);
        sm = k;
        k = splitmix64(sm) ^ (b * 0xaf251af3b0f025b5ULL);
        return Rng(k);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    u128 next_u128() { return (u128(next_u64()) << 64) | next_u64(); }

    // uniform on the open interval (0,1); never returns 0 or 1
    double next_open01() {
        return (double(next_u64() >> 11) + 0.5) * 0x1p-53;
    }
    // uniform on [0,1)
    double next_half_open01() {
        return double(next_u64() >> 11) * 0x1p-53;
    }
    double next_exponential() { return -std::log(next_open01()); }

private:
    std::uint64_t s_[4];
};

} // namespace cotsum
