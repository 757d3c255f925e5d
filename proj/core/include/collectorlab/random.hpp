#pragma once

#include <cstdint>
#include <limits>

namespace collectorlab {

__extension__ typedef unsigned __int128 uint128;

/// SplitMix64 finalizer; used to turn (seed, replicate) keys into
/// well-mixed generator states.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman and Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    /// Independent stream for replicate `index` under `seed`. The state is
    /// a pure function of the pair, so streams never depend on which thread
    /// runs which replicate.
    static constexpr Xoshiro256pp for_stream(std::uint64_t seed, std::uint64_t index) noexcept {
        std::uint64_t key = seed;
        const std::uint64_t mixed_seed = splitmix64(key);
        std::uint64_t stream_key = mixed_seed ^ (index * 0xd1b54a32d192ed03ULL);
        return Xoshiro256pp(splitmix64(stream_key));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
};

}  // namespace collectorlab
