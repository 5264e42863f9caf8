#pragma once

#include <cstdint>
#include <vector>

#include "pcep/bits.hpp"

namespace pcep {

// LLR magnitude used for perfectly known bits; large enough that the decoder
// treats them as certain, small enough to stay far from overflow in sums.
constexpr double LLR_MAX = 100.0;

// Polar transform of length N = 2^n_exp: butterfly stages followed by a
// bit-reversal gather. The map is an involution, so it both encodes source
// words and recovers them from codewords.
BitVec polar_encode(const BitVec& u);

// LLR of one observed bit through a binary symmetric channel with crossover
// probability p: positive means bit 0 is more likely. p = 0 yields +-LLR_MAX.
// Throws DomainError unless 0 <= p < 0.5.
double channel_llr(std::uint8_t bit, double p);

// Successive cancellation decoder over a fixed frozen set. Frozen positions
// are forced to the supplied values; the rest are decided from LLRs.
class ScDecoder {
public:
    // frozen_mask[i] != 0 marks source position i as frozen with value
    // frozen_values[i]. Both spans have length N = 2^n_exp.
    ScDecoder(BitVec frozen_mask, BitVec frozen_values);

    std::size_t block_length() const { return frozen_mask_.size(); }

    struct Result {
        BitVec source;    // decided source word u
        BitVec codeword;  // re-encoded word x consistent with source
    };

    // llr[j] is the channel LLR of codeword bit j. Length must equal N.
    Result decode(const std::vector<double>& llr) const;

private:
    BitVec frozen_mask_;
    BitVec frozen_values_;
    std::size_t n_exp_;
};

// Systematic encoder for a fixed information set: produces codewords whose
// bits at the information positions equal the payload key verbatim, with all
// remaining source positions frozen to caller-supplied values.
class SystematicEncoder {
public:
    // info_set: strictly increasing codeword positions that carry the payload.
    // n_exp: log2 of block length. Throws SingularEncodingError if the induced
    // linear system has no solution for some payload.
    SystematicEncoder(std::vector<std::uint32_t> info_set, std::size_t n_exp);

    std::size_t block_length() const { return std::size_t(1) << n_exp_; }
    std::size_t payload_length() const { return info_set_.size(); }

    // key: payload bits, length |info_set|. frozen_values: full-length source
    // word whose entries outside info_set are the frozen bits (entries inside
    // info_set are ignored). Returns the codeword x with x[info_set] == key.
    BitVec encode(const BitVec& key, const BitVec& frozen_values) const;

private:
    std::vector<std::uint32_t> info_set_;
    std::size_t n_exp_;
    // Rows of the inverse of the info-set submatrix of the transform, packed
    // 64 positions per word; row r gives the source-bit combination that
    // realizes payload unit vector r.
    std::vector<std::uint64_t> inv_rows_;
    std::size_t words_per_row_;
};

} // namespace pcep
