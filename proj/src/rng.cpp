#include "pcep/rng.hpp"

#include <sodium.h>

#include <array>
#include <stdexcept>

namespace pcep {

BitVec secure_bits(std::uint64_t seed, std::size_t count) {
    if (sodium_init() < 0)
        throw std::runtime_error("secure_bits: libsodium initialization failed");
    std::array<unsigned char, randombytes_SEEDBYTES> key{};
    std::uint64_t s = seed;
    for (std::size_t i = 0; i < key.size(); i += 8) {
        s = splitmix64(s);
        for (std::size_t k = 0; k < 8; ++k)
            key[i + k] = static_cast<unsigned char>((s >> (8 * k)) & 0xff);
    }
    std::vector<std::uint8_t> raw((count + 7) / 8);
    if (!raw.empty())
        randombytes_buf_deterministic(raw.data(), raw.size(), key.data());
    BitVec out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = (raw[i >> 3] >> (i & 7)) & 1u;
    return out;
}

} // namespace pcep
