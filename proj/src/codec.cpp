#include "pcep/codec.hpp"

#include <algorithm>
#include <cmath>

#include "pcep/errors.hpp"

namespace pcep {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
    std::size_t n = 0;
    while ((std::size_t(1) << n) < v) ++n;
    return n;
}

// Exact min-sum with both correction terms. Each term is skipped once its
// exponent makes the correction smaller than one ulp of the leading part.
double boxplus(double a, double b) {
    double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    double r = sign * std::min(std::abs(a), std::abs(b));
    double s = std::abs(a + b);
    double d = std::abs(a - b);
    if (s <= 42.0) r += std::log1p(std::exp(-s));
    if (d <= 42.0) r -= std::log1p(std::exp(-d));
    return r;
}

} // namespace

BitVec polar_encode(const BitVec& u) {
    const std::size_t n = u.size();
    if (!is_power_of_two(n))
        throw LengthMismatchError("polar_encode: length must be a power of two");

    BitVec x = u;
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t blk = 0; blk < n; blk += 2 * len)
            for (std::size_t k = 0; k < len; ++k)
                x[blk + k] ^= x[blk + k + len];
    return x;
}

double channel_llr(std::uint8_t bit, double p) {
    if (!(p >= 0.0) || p >= 0.5)
        throw DomainError("channel_llr: crossover must satisfy 0 <= p < 0.5");
    double mag = (p == 0.0) ? LLR_MAX : std::min(std::log((1.0 - p) / p), LLR_MAX);
    return bit ? -mag : mag;
}

ScDecoder::ScDecoder(BitVec frozen_mask, BitVec frozen_values)
    : frozen_mask_(std::move(frozen_mask)), frozen_values_(std::move(frozen_values)) {
    if (frozen_mask_.size() != frozen_values_.size())
        throw LengthMismatchError("ScDecoder: mask and values lengths differ");
    if (!is_power_of_two(frozen_mask_.size()))
        throw LengthMismatchError("ScDecoder: block length must be a power of two");
    n_exp_ = log2_exact(frozen_mask_.size());
}

namespace {

// Per-call scratch: one LLR span and one partial-transform span per level.
struct ScWork {
    std::vector<std::vector<double>> llr;
    std::vector<BitVec> beta;
};

void sc_decode_span(ScWork& ws, const BitVec& mask, const BitVec& vals, BitVec& u_hat,
                    std::size_t level, std::size_t base) {
    if (level == 0) {
        std::uint8_t bit;
        if (mask[base])
            bit = vals[base];
        else
            bit = (ws.llr[0][0] < 0.0) ? 1 : 0;
        u_hat[base] = bit;
        ws.beta[0][0] = bit;
        return;
    }
    const std::size_t half = std::size_t(1) << (level - 1);
    const std::vector<double>& L = ws.llr[level];
    std::vector<double>& Lc = ws.llr[level - 1];
    BitVec& B = ws.beta[level];
    BitVec& Bc = ws.beta[level - 1];

    for (std::size_t k = 0; k < half; ++k)
        Lc[k] = boxplus(L[k], L[k + half]);
    sc_decode_span(ws, mask, vals, u_hat, level - 1, base);
    std::copy(Bc.begin(), Bc.begin() + half, B.begin());

    for (std::size_t k = 0; k < half; ++k)
        Lc[k] = L[k + half] + (1.0 - 2.0 * B[k]) * L[k];
    sc_decode_span(ws, mask, vals, u_hat, level - 1, base + half);

    for (std::size_t k = 0; k < half; ++k) {
        B[k] ^= Bc[k];
        B[k + half] = Bc[k];
    }
}

} // namespace

ScDecoder::Result ScDecoder::decode(const std::vector<double>& llr) const {
    const std::size_t n = frozen_mask_.size();
    if (llr.size() != n)
        throw LengthMismatchError("ScDecoder::decode: LLR length mismatch");

    ScWork ws;
    ws.llr.resize(n_exp_ + 1);
    ws.beta.resize(n_exp_ + 1);
    for (std::size_t lv = 0; lv <= n_exp_; ++lv) {
        ws.llr[lv].resize(std::size_t(1) << lv);
        ws.beta[lv].resize(std::size_t(1) << lv);
    }
    ws.llr[n_exp_] = llr;

    Result res;
    res.source.resize(n);
    sc_decode_span(ws, frozen_mask_, frozen_values_, res.source, n_exp_, 0);
    res.codeword = ws.beta[n_exp_];
    return res;
}

SystematicEncoder::SystematicEncoder(std::vector<std::uint32_t> info_set, std::size_t n_exp)
    : info_set_(std::move(info_set)), n_exp_(n_exp) {
    if (n_exp_ > 24)
        throw DomainError("SystematicEncoder: block exponent out of range");
    const std::size_t n = std::size_t(1) << n_exp_;
    for (std::size_t r = 0; r + 1 < info_set_.size(); ++r)
        if (info_set_[r] >= info_set_[r + 1])
            throw DomainError("SystematicEncoder: info set must be strictly increasing");
    if (!info_set_.empty() && info_set_.back() >= n)
        throw DomainError("SystematicEncoder: info set index out of range");

    const std::size_t k = info_set_.size();
    words_per_row_ = (k + 63) / 64;
    if (k == 0) return;

    // Submatrix of the transform restricted to info rows and columns; source
    // bit i reaches codeword bit j exactly when j is bitwise dominated by i,
    // so the submatrix is unit lower triangular in index order and the
    // elimination below cannot fail for a well-formed info set.
    std::vector<std::uint64_t> m(k * words_per_row_, 0);
    std::vector<std::uint64_t> inv(k * words_per_row_, 0);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c)
            if ((info_set_[c] & ~info_set_[r]) == 0)
                m[r * words_per_row_ + c / 64] |= std::uint64_t(1) << (c % 64);
        inv[r * words_per_row_ + r / 64] |= std::uint64_t(1) << (r % 64);
    }

    // Gauss-Jordan elimination over GF(2) with packed rows.
    for (std::size_t col = 0; col < k; ++col) {
        const std::size_t word = col / 64;
        const std::uint64_t bit = std::uint64_t(1) << (col % 64);
        std::size_t pivot = k;
        for (std::size_t r = col; r < k; ++r)
            if (m[r * words_per_row_ + word] & bit) { pivot = r; break; }
        if (pivot == k)
            throw SingularEncodingError("SystematicEncoder: info-set submatrix is singular");
        if (pivot != col) {
            for (std::size_t wd = 0; wd < words_per_row_; ++wd) {
                std::swap(m[pivot * words_per_row_ + wd], m[col * words_per_row_ + wd]);
                std::swap(inv[pivot * words_per_row_ + wd], inv[col * words_per_row_ + wd]);
            }
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || !(m[r * words_per_row_ + word] & bit)) continue;
            for (std::size_t wd = 0; wd < words_per_row_; ++wd) {
                m[r * words_per_row_ + wd] ^= m[col * words_per_row_ + wd];
                inv[r * words_per_row_ + wd] ^= inv[col * words_per_row_ + wd];
            }
        }
    }
    inv_rows_ = std::move(inv);
}

BitVec SystematicEncoder::encode(const BitVec& key, const BitVec& frozen_values) const {
    const std::size_t n = block_length();
    const std::size_t k = info_set_.size();
    if (key.size() != k)
        throw LengthMismatchError("SystematicEncoder::encode: key length mismatch");
    if (frozen_values.size() != n)
        throw LengthMismatchError("SystematicEncoder::encode: frozen values length mismatch");

    BitVec u = frozen_values;
    for (std::uint32_t pos : info_set_) u[pos] = 0;

    if (k > 0) {
        // Residual the frozen part induces at the info positions, then the
        // source-side correction that cancels it and lands the key.
        BitVec w = polar_encode(u);
        std::vector<std::uint64_t> acc(words_per_row_, 0);
        for (std::size_t r = 0; r < k; ++r) {
            if ((key[r] ^ w[info_set_[r]]) == 0) continue;
            const std::uint64_t* row = &inv_rows_[r * words_per_row_];
            for (std::size_t wd = 0; wd < words_per_row_; ++wd) acc[wd] ^= row[wd];
        }
        for (std::size_t c = 0; c < k; ++c)
            u[info_set_[c]] = (acc[c / 64] >> (c % 64)) & 1u;
    }

    BitVec x = polar_encode(u);
    for (std::size_t r = 0; r < k; ++r)
        if (x[info_set_[r]] != key[r])
            throw SingularEncodingError("SystematicEncoder::encode: postcondition failed");
    return x;
}

} // namespace pcep
