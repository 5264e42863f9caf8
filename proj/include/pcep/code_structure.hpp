#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pcep {

// Cumulative budgets that drive the index selections.
struct PartitionTargets {
    double fer_target = 0.1;   // residual frame-error budget for the main channel
    double pai_target = 1e-7;  // leakage budget for the wiretap channel, bits per block
    // When set, the leakage budget is read per codeword bit instead of per
    // block, i.e. the capacity sum is compared against pai_target * N.
    bool normalized_pai = false;
};

struct IndexSplit {
    std::vector<std::uint32_t> selected;  // indices inside the budgeted prefix
    std::vector<std::uint32_t> rest;      // complement, both ascending
};

// Maximal prefix of indices sorted by bound ascending (ties: lower index)
// whose bound sum stays within fer_target. selected = reliable indices.
IndexSplit select_good_main(const std::vector<double>& bounds, double fer_target);

// Converts each bound to a subchannel capacity 1 - h2(bound) and takes the
// maximal ascending-capacity prefix whose capacity sum stays within the
// leakage budget. selected = indices nearly useless to the wiretapper.
IndexSplit select_bad_wiretap(const std::vector<double>& wiretap_bounds, double pai_target,
                              bool normalized = false);

// Source-index partition agreed by both endpoints. set_r carries published
// random bits, set_a carries the key, set_b is frozen to zero. Immutable
// after construction and safe to share across threads.
struct CodeStructure {
    std::size_t n_exp = 0;
    std::size_t mu = 0;
    double p_m = 0.0;
    double p_w = 0.0;
    double fer_target = 0.0;
    double pai_target = 0.0;
    std::vector<std::uint32_t> set_r;  // ascending
    std::vector<std::uint32_t> set_a;  // ascending
    std::vector<std::uint32_t> set_b;  // ascending
    double rate = 0.0;
    std::size_t anomaly_count = 0;

    std::size_t block_length() const { return std::size_t(1) << n_exp; }
};

// Memoizes reliability vectors per (p, n_exp, mu), optionally backed by an
// append-only cache file so repeated runs skip reconstruction.
class ReliabilityCache {
public:
    ReliabilityCache() = default;
    explicit ReliabilityCache(std::string file_path) : file_path_(std::move(file_path)) {}

    const std::vector<double>& get(double p, std::size_t n_exp, std::size_t mu);

private:
    struct Key {
        double p;
        std::size_t n_exp;
        std::size_t mu;
        bool operator<(const Key& o) const {
            if (p != o.p) return p < o.p;
            if (n_exp != o.n_exp) return n_exp < o.n_exp;
            return mu < o.mu;
        }
    };
    std::map<Key, std::vector<double>> memo_;
    std::string file_path_;
};

// Derives the full structure from shared parameters alone, so both endpoints
// reach an identical partition without communicating it. Indices reliable for
// the wiretapper become R, indices reliable only for the legitimate receiver
// become A, everything unreliable becomes B. Indices that look good for the
// wiretapper but bad for the receiver contradict channel degradation; they
// are counted as anomalies and conservatively frozen into B.
// Throws InadmissibleQberError when the secrecy capacity at p_m is negative.
CodeStructure build_code_structure(double p_m, std::size_t n_exp, const PartitionTargets& targets,
                                   std::size_t mu, ReliabilityCache* cache = nullptr);

// Canonical JSON text of a structure (fixed key set, ascending indices,
// sorted keys); two endpoints compare digests of this text.
std::string structure_json(const CodeStructure& s);

// FNV-1a 64-bit digest of structure_json.
std::uint64_t structure_digest(const CodeStructure& s);

} // namespace pcep
