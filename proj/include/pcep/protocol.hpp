#pragma once

#include <cstdint>
#include <string>

#include "pcep/bits.hpp"
#include "pcep/code_structure.hpp"
#include "pcep/codec.hpp"

namespace pcep {

// Disagreement fraction between two disclosed sample strings. The caller is
// responsible for discarding the disclosed bits from key material.
double estimate_qber(const BitVec& alice_sample, const BitVec& bob_sample);

// Soft input for one observed bit: zero information at exactly p = 0.5
// (the wiretap channel of a perfect main channel), channel LLR otherwise.
double observation_llr(std::uint8_t bit, double p);

// Everything published over the classical channel for one block. chk1/chk2
// are the codeword bits at the R and B positions in ascending index order;
// the key positions are never included.
struct PublicMessage {
    std::uint64_t block_id = 0;
    std::uint64_t structure_digest = 0;
    BitVec chk1;
    BitVec chk2;

    std::string to_json() const;
    // Bit counts come from the structure; malformed text, wrong lengths, or
    // stray padding raise FormatError.
    static PublicMessage from_json(const std::string& text, const CodeStructure& s);
};

struct ReconciliationResult {
    BitVec final_key;      // decoded codeword at the key positions, length |set_a|
    // Decoded source-domain bits at the key positions. Per-bit statistics are
    // measured here: the per-position secrecy argument bounds what a decoder
    // can learn about these transformed bits, not about the raw key copy an
    // eavesdropper already holds.
    BitVec info_bits;
    bool success = false;  // set by the simulation against ground truth
};

// Sender side: systematically encodes the sifted key with fresh random bits
// on R and zeros on B, publishes the R/B projections, keeps the A projection.
class AliceSession {
public:
    explicit AliceSession(CodeStructure structure);

    struct Prepared {
        PublicMessage msg;
        BitVec final_key;  // equals the key passed in, by the systematic contract
        BitVec info_bits;  // true source-domain bits at the key positions
    };
    // rng_seed feeds a deterministic cryptographically strong stream for the
    // R bits, so recorded seeds reproduce blocks exactly.
    Prepared prepare(const BitVec& ka, std::uint64_t rng_seed, std::uint64_t block_id = 0) const;

    const CodeStructure& structure() const { return structure_; }

private:
    CodeStructure structure_;
    SystematicEncoder encoder_;
    std::uint64_t digest_;
};

// Receiver side: rebuilds the codeword from noiseless published projections
// plus its own noisy key bits, then reads the key off the decoded codeword.
class BobSession {
public:
    explicit BobSession(CodeStructure structure);

    // Throws DigestMismatchError when the message was built against a
    // different structure than Bob derived locally.
    ReconciliationResult reconcile(const BitVec& kb, const PublicMessage& msg) const;

private:
    CodeStructure structure_;
    ScDecoder decoder_;
    std::uint64_t digest_;
};

// Attacker model: same decoding procedure as the receiver, but the key
// positions are observed through the wiretap channel. Sees exactly the
// public message and its own eavesdropped bits, nothing else.
class EveSession {
public:
    explicit EveSession(CodeStructure structure);

    ReconciliationResult attack(const BitVec& ke, const PublicMessage& msg) const;

private:
    CodeStructure structure_;
    ScDecoder decoder_;
};

} // namespace pcep
