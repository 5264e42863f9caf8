#include "pcep/bits.hpp"

#include "pcep/errors.hpp"

namespace pcep {

std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size())
        throw LengthMismatchError("hamming_distance: lengths differ");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += (a[i] ^ b[i]) & 1u;
    return d;
}

std::vector<std::uint8_t> pack_bits(const BitVec& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        out[i >> 3] |= static_cast<std::uint8_t>((bits[i] & 1u) << (i & 7));
    return out;
}

BitVec unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
    if (bytes.size() != (bit_count + 7) / 8)
        throw FormatError("unpack_bits: byte count does not match bit count");
    BitVec out(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i)
        out[i] = (bytes[i >> 3] >> (i & 7)) & 1u;
    for (std::size_t i = bit_count; i < bytes.size() * 8; ++i)
        if ((bytes[i >> 3] >> (i & 7)) & 1u)
            throw FormatError("unpack_bits: nonzero padding bit");
    return out;
}

namespace {

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

} // namespace

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve(((data.size() + 2) / 3) * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        std::uint32_t v = (std::uint32_t(data[i]) << 16) | (std::uint32_t(data[i + 1]) << 8) | data[i + 2];
        out += kB64Alphabet[(v >> 18) & 63];
        out += kB64Alphabet[(v >> 12) & 63];
        out += kB64Alphabet[(v >> 6) & 63];
        out += kB64Alphabet[v & 63];
    }
    std::size_t rem = data.size() - i;
    if (rem == 1) {
        std::uint32_t v = std::uint32_t(data[i]) << 16;
        out += kB64Alphabet[(v >> 18) & 63];
        out += kB64Alphabet[(v >> 12) & 63];
        out += "==";
    } else if (rem == 2) {
        std::uint32_t v = (std::uint32_t(data[i]) << 16) | (std::uint32_t(data[i + 1]) << 8);
        out += kB64Alphabet[(v >> 18) & 63];
        out += kB64Alphabet[(v >> 12) & 63];
        out += kB64Alphabet[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0)
        throw FormatError("base64_decode: length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int pad = 0;
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k) {
            char c = text[i + k];
            if (c == '=') {
                if (i + 4 != text.size() || k < 2 || (k == 2 && text[i + 3] != '='))
                    throw FormatError("base64_decode: bad padding");
                ++pad;
                v <<= 6;
                continue;
            }
            if (pad > 0)
                throw FormatError("base64_decode: data after padding");
            int d = b64_value(c);
            if (d < 0)
                throw FormatError("base64_decode: invalid character");
            v = (v << 6) | std::uint32_t(d);
        }
        out.push_back(std::uint8_t((v >> 16) & 0xff));
        if (pad < 2) out.push_back(std::uint8_t((v >> 8) & 0xff));
        if (pad < 1) out.push_back(std::uint8_t(v & 0xff));
    }
    return out;
}

} // namespace pcep
