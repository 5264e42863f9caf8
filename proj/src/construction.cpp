#include "pcep/construction.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <span>

#include "pcep/discrete_channel.hpp"
#include "pcep/errors.hpp"

namespace pcep {

namespace {

struct BuildState {
    std::size_t max_reps;
    std::vector<ChannelSymbol> raw;  // reused across nodes
};

// Depth-first walk of the polarization tree. The check branch fills the
// lower half of `out`, the bit branch the upper half, so leaf order matches
// the natural source index (most significant index bit = first split).
// Leaves take the error bound from the un-merged child alphabet, which is
// both cheaper and tighter than merging first.
void polarize_walk(const SymmetricChannel& ch, int remaining, std::span<double> out, BuildState& st) {
    const std::size_t half = out.size() / 2;

    ch.transform_minus(st.raw);
    if (remaining == 1) {
        out[0] = SymmetricChannel::error_bound_raw(st.raw);
    } else {
        SymmetricChannel child = SymmetricChannel::degrade_merge(st.raw, st.max_reps);
        polarize_walk(child, remaining - 1, out.subspan(0, half), st);
    }

    ch.transform_plus(st.raw);
    if (remaining == 1) {
        out[1] = SymmetricChannel::error_bound_raw(st.raw);
    } else {
        SymmetricChannel child = SymmetricChannel::degrade_merge(st.raw, st.max_reps);
        polarize_walk(child, remaining - 1, out.subspan(half, half), st);
    }
}

} // namespace

std::vector<double> polarize_reliabilities(double p, int n_exp, std::uint32_t mu) {
    if (!(p >= 0.0 && p <= 0.5))
        throw DomainError("polarize_reliabilities: p must lie in [0, 0.5]");
    if (n_exp < 1 || n_exp > 24)
        throw DomainError("polarize_reliabilities: n_exp must lie in [1, 24]");
    if (mu < 2 || mu % 2 != 0)
        throw DomainError("polarize_reliabilities: mu must be even and >= 2");

    std::vector<double> bounds(std::size_t(1) << n_exp);
    BuildState st;
    st.max_reps = mu / 2;  // mu counts full output symbols; reps come in mirror pairs
    polarize_walk(SymmetricChannel::bsc(p), n_exp, bounds, st);
    return bounds;
}

double exact_subchannel_error(double p, int n_exp, std::uint32_t index) {
    if (!(p >= 0.0 && p <= 0.5))
        throw DomainError("exact_subchannel_error: p must lie in [0, 0.5]");
    if (n_exp < 1 || n_exp > 3)
        throw DomainError("exact_subchannel_error: enumeration feasible only for n_exp <= 3");
    const std::uint32_t N = 1u << n_exp;
    if (index >= N)
        throw DomainError("exact_subchannel_error: index out of range");

    // Generator rows straight from the definition x_j = sum_i u_i G_ij with
    // G_ij = 1 iff the bits of j are covered by the bits of i.
    std::vector<std::uint32_t> row(N);
    for (std::uint32_t i = 0; i < N; ++i) {
        std::uint32_t bits = 0;
        for (std::uint32_t j = 0; j < N; ++j)
            if ((j & ~i) == 0) bits |= (1u << j);
        row[i] = bits;
    }
    auto encode = [&](std::uint32_t u) {
        std::uint32_t x = 0;
        for (std::uint32_t i = 0; i < N; ++i)
            if ((u >> i) & 1u) x ^= row[i];
        return x;
    };

    // P(d flipped positions) for the memoryless binary symmetric channel.
    std::vector<double> flip_prob(N + 1);
    for (std::uint32_t d = 0; d <= N; ++d) {
        double v = 1.0;
        for (std::uint32_t k = 0; k < d; ++k) v *= p;
        for (std::uint32_t k = d; k < N; ++k) v *= (1.0 - p);
        flip_prob[d] = v;
    }

    const double suffix_weight = 1.0 / double(std::uint64_t(1) << (N - 1));
    std::vector<double> lik0(std::size_t(1) << N), lik1(lik0.size());
    double error = 0.0;
    for (std::uint32_t prefix = 0; prefix < (1u << index); ++prefix) {
        std::fill(lik0.begin(), lik0.end(), 0.0);
        std::fill(lik1.begin(), lik1.end(), 0.0);
        for (std::uint32_t bit = 0; bit <= 1; ++bit) {
            auto& lik = bit ? lik1 : lik0;
            for (std::uint32_t s = 0; s < (1u << (N - 1 - index)); ++s) {
                std::uint32_t u = prefix | (bit << index) | (s << (index + 1));
                std::uint32_t x = encode(u);
                for (std::uint32_t y = 0; y < (1u << N); ++y)
                    lik[y] += suffix_weight * flip_prob[std::popcount(x ^ y)];
            }
        }
        for (std::size_t y = 0; y < lik0.size(); ++y)
            error += 0.5 * std::min(lik0[y], lik1[y]);
    }
    return error;
}

namespace {

constexpr char kCacheMagic[4] = {'P', 'C', 'E', 'P'};
constexpr std::uint16_t kCacheVersion = 1;

void put_u16(std::FILE* f, std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>(v >> 8)};
    if (std::fwrite(b, 1, 2, f) != 2) throw IoError("cache write failed");
}

void put_u32(std::FILE* f, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    if (std::fwrite(b, 1, 4, f) != 4) throw IoError("cache write failed");
}

void put_f64(std::FILE* f, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    if (std::fwrite(b, 1, 8, f) != 8) throw IoError("cache write failed");
}

bool get_bytes(std::FILE* f, unsigned char* b, std::size_t n) {
    return std::fread(b, 1, n, f) == n;
}

std::uint16_t load_u16(const unsigned char* b) {
    return static_cast<std::uint16_t>(b[0] | (std::uint16_t(b[1]) << 8));
}

std::uint32_t load_u32(const unsigned char* b) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double load_f64(const unsigned char* b) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

} // namespace

void append_reliability_record(const std::string& path, double p, int n_exp,
                               std::uint32_t mu, const std::vector<double>& bounds) {
    if (n_exp < 1 || n_exp > 24 || bounds.size() != (std::size_t(1) << n_exp))
        throw DomainError("append_reliability_record: bounds size mismatch");
    std::FILE* f = std::fopen(path.c_str(), "ab");
    if (!f) throw IoError("append_reliability_record: cannot open " + path);
    try {
        if (std::fwrite(kCacheMagic, 1, 4, f) != 4) throw IoError("cache write failed");
        put_u16(f, kCacheVersion);
        unsigned char ne = static_cast<unsigned char>(n_exp);
        if (std::fwrite(&ne, 1, 1, f) != 1) throw IoError("cache write failed");
        put_u32(f, mu);
        put_f64(f, p);
        for (double d : bounds) put_f64(f, d);
    } catch (...) {
        std::fclose(f);
        throw;
    }
    if (std::fclose(f) != 0) throw IoError("append_reliability_record: close failed");
}

std::optional<std::vector<double>> find_reliability_record(const std::string& path, double p,
                                                           int n_exp, std::uint32_t mu) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return std::nullopt;
    std::optional<std::vector<double>> found;
    for (;;) {
        unsigned char head[4 + 2 + 1 + 4 + 8];
        if (!get_bytes(f, head, sizeof head)) break;
        if (std::memcmp(head, kCacheMagic, 4) != 0 || load_u16(head + 4) != kCacheVersion) {
            std::fclose(f);
            throw FormatError("reliability cache: bad record header in " + path);
        }
        int rec_n = head[6];
        std::uint32_t rec_mu = load_u32(head + 7);
        double rec_p = load_f64(head + 11);
        if (rec_n < 1 || rec_n > 24) {
            std::fclose(f);
            throw FormatError("reliability cache: bad n_exp in " + path);
        }
        std::size_t count = std::size_t(1) << rec_n;
        std::vector<unsigned char> payload(count * 8);
        if (!get_bytes(f, payload.data(), payload.size())) {
            std::fclose(f);
            throw FormatError("reliability cache: truncated record in " + path);
        }
        if (rec_n == n_exp && rec_mu == mu && rec_p == p) {
            std::vector<double> bounds(count);
            for (std::size_t i = 0; i < count; ++i)
                bounds[i] = load_f64(payload.data() + 8 * i);
            found = std::move(bounds);
            // keep scanning; a later record for the same key wins
        }
    }
    std::fclose(f);
    return found;
}

} // namespace pcep
