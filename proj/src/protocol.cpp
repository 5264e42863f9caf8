#include "pcep/protocol.hpp"

#include <utility>

#include "json.hpp"

#include "pcep/errors.hpp"
#include "pcep/rng.hpp"

namespace pcep {

double estimate_qber(const BitVec& alice_sample, const BitVec& bob_sample) {
    if (alice_sample.empty())
        throw DomainError("estimate_qber: samples must be non-empty");
    return double(hamming_distance(alice_sample, bob_sample)) / double(alice_sample.size());
}

double observation_llr(std::uint8_t bit, double p) {
    if (p == 0.5) return 0.0;
    return channel_llr(bit, p);
}

std::string PublicMessage::to_json() const {
    nlohmann::json j;
    j["block_id"] = block_id;
    j["digest"] = structure_digest;
    j["chk1"] = base64_encode(pack_bits(chk1));
    j["chk2"] = base64_encode(pack_bits(chk2));
    return j.dump();
}

PublicMessage PublicMessage::from_json(const std::string& text, const CodeStructure& s) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("PublicMessage: invalid JSON: ") + e.what());
    }
    PublicMessage msg;
    try {
        msg.block_id = j.at("block_id").get<std::uint64_t>();
        msg.structure_digest = j.at("digest").get<std::uint64_t>();
        msg.chk1 = unpack_bits(base64_decode(j.at("chk1").get<std::string>()), s.set_r.size());
        msg.chk2 = unpack_bits(base64_decode(j.at("chk2").get<std::string>()), s.set_b.size());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("PublicMessage: missing or mistyped field: ") + e.what());
    }
    return msg;
}

namespace {

// Frozen spec shared by both decoders: B positions pinned to zero, R and A
// positions free.
ScDecoder make_decoder(const CodeStructure& s) {
    BitVec mask(s.block_length(), 0), values(s.block_length(), 0);
    for (std::uint32_t i : s.set_b) mask[i] = 1;
    return ScDecoder(std::move(mask), std::move(values));
}

// Observation assembly shared by Bob and Eve: published projections are
// noiseless, key positions are seen through a BSC(p).
std::vector<double> assemble_llrs(const CodeStructure& s, const BitVec& key_obs,
                                  const PublicMessage& msg, double p) {
    if (key_obs.size() != s.set_a.size())
        throw LengthMismatchError("reconcile: key length does not match structure");
    if (msg.chk1.size() != s.set_r.size() || msg.chk2.size() != s.set_b.size())
        throw LengthMismatchError("reconcile: check-bit counts do not match structure");

    std::vector<double> llr(s.block_length(), 0.0);
    for (std::size_t k = 0; k < s.set_r.size(); ++k)
        llr[s.set_r[k]] = msg.chk1[k] ? -LLR_MAX : LLR_MAX;
    for (std::size_t k = 0; k < s.set_b.size(); ++k)
        llr[s.set_b[k]] = msg.chk2[k] ? -LLR_MAX : LLR_MAX;
    for (std::size_t k = 0; k < s.set_a.size(); ++k)
        llr[s.set_a[k]] = observation_llr(key_obs[k], p);
    return llr;
}

BitVec project(const BitVec& x, const std::vector<std::uint32_t>& idx) {
    BitVec out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = x[idx[k]];
    return out;
}

} // namespace

AliceSession::AliceSession(CodeStructure structure)
    : structure_(std::move(structure)),
      encoder_(structure_.set_a, structure_.n_exp),
      digest_(structure_digest(structure_)) {}

AliceSession::Prepared AliceSession::prepare(const BitVec& ka, std::uint64_t rng_seed,
                                             std::uint64_t block_id) const {
    if (ka.size() != structure_.set_a.size())
        throw LengthMismatchError("prepare: key length does not match structure");

    BitVec frozen(structure_.block_length(), 0);
    BitVec random_bits = secure_bits(rng_seed, structure_.set_r.size());
    for (std::size_t k = 0; k < structure_.set_r.size(); ++k)
        frozen[structure_.set_r[k]] = random_bits[k];

    BitVec x = encoder_.encode(ka, frozen);

    Prepared out;
    out.msg.block_id = block_id;
    out.msg.structure_digest = digest_;
    out.msg.chk1 = project(x, structure_.set_r);
    out.msg.chk2 = project(x, structure_.set_b);
    out.final_key = project(x, structure_.set_a);
    // The encoding transform is an involution, so this recovers the source
    // block the codeword came from.
    out.info_bits = project(polar_encode(x), structure_.set_a);
    return out;
}

BobSession::BobSession(CodeStructure structure)
    : structure_(std::move(structure)),
      decoder_(make_decoder(structure_)),
      digest_(structure_digest(structure_)) {}

ReconciliationResult BobSession::reconcile(const BitVec& kb, const PublicMessage& msg) const {
    if (msg.structure_digest != digest_)
        throw DigestMismatchError("reconcile: structure digest mismatch");
    auto llr = assemble_llrs(structure_, kb, msg, structure_.p_m);
    ScDecoder::Result dec = decoder_.decode(llr);
    ReconciliationResult res;
    res.final_key = project(dec.codeword, structure_.set_a);
    res.info_bits = project(dec.source, structure_.set_a);
    return res;
}

EveSession::EveSession(CodeStructure structure)
    : structure_(std::move(structure)), decoder_(make_decoder(structure_)) {}

ReconciliationResult EveSession::attack(const BitVec& ke, const PublicMessage& msg) const {
    auto llr = assemble_llrs(structure_, ke, msg, structure_.p_w);
    ScDecoder::Result dec = decoder_.decode(llr);
    ReconciliationResult res;
    res.final_key = project(dec.codeword, structure_.set_a);
    res.info_bits = project(dec.source, structure_.set_a);
    return res;
}

} // namespace pcep
