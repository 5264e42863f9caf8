#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcep {

// One bit per element, values restricted to 0 or 1.
using BitVec = std::vector<std::uint8_t>;

// Reverses the low `bits` bits of `v`.
inline std::uint32_t bit_reverse(std::uint32_t v, int bits) {
    std::uint32_t r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | (v & 1u);
        v >>= 1;
    }
    return r;
}

std::size_t hamming_distance(const BitVec& a, const BitVec& b);

// Packs bits into bytes, bit k of each byte holding element 8*byte + k.
// Trailing pad bits are zero so packing is deterministic.
std::vector<std::uint8_t> pack_bits(const BitVec& bits);

// Inverse of pack_bits; `bit_count` recovers the exact length.
BitVec unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count);

std::string base64_encode(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> base64_decode(const std::string& text);

} // namespace pcep
