#pragma once

#include <cstdint>
#include <random>

#include "pcep/bits.hpp"

namespace pcep {

// SplitMix64 output function (Steele, Lea, Flood 2014). Used to derive
// independent substream seeds from (seed, tag) pairs so that results do not
// depend on how work is scheduled across threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag));
}

// Deterministic stream of uniform bits and Bernoulli trials. The Bernoulli
// draw compares a raw 64-bit word against a fixed threshold, so identical
// seeds give identical output on every standard-conforming platform.
class BitSampler {
public:
    explicit BitSampler(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_word() { return eng_(); }

    std::uint8_t uniform_bit() {
        if (avail_ == 0) {
            buf_ = eng_();
            avail_ = 64;
        }
        std::uint8_t b = buf_ & 1u;
        buf_ >>= 1;
        --avail_;
        return b;
    }

    BitVec uniform_bits(std::size_t count) {
        BitVec v(count);
        for (auto& b : v) b = uniform_bit();
        return v;
    }

    // True with probability p, for p in [0, 1].
    bool bernoulli(double p) {
        if (p <= 0.0) { eng_(); return false; }
        if (p >= 1.0) { eng_(); return true; }
        auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
        return eng_() < threshold;
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t buf_ = 0;
    int avail_ = 0;
};

// Uniform bits from a keyed stream cipher, for values that leave the local
// machine (the randomized frame positions). Deterministic given the seed.
BitVec secure_bits(std::uint64_t seed, std::size_t count);

} // namespace pcep
