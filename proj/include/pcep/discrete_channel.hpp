#pragma once

#include <cstddef>
#include <vector>

namespace pcep {

// One representative of a conjugate output pair of a binary-input symmetric
// channel: a = P(y|0), b = P(y|1) with a >= b; the mirrored symbol (b, a) is
// implied. key = ln(a/b), used for ordering (+inf when b == 0).
struct ChannelSymbol {
    double a;
    double b;
    double key;
};

// Binary-input symmetric discrete channel stored as representatives sorted
// by ascending key. Invariant: sum of (a + b) over entries equals 1.
class SymmetricChannel {
public:
    static SymmetricChannel bsc(double p);

    const std::vector<ChannelSymbol>& symbols() const { return syms_; }

    // Probability that a maximum-likelihood decision on one use is wrong
    // (ties between the two inputs count one half).
    double error_bound() const;

    double capacity() const;

    // Output alphabets of the two single-step polarization branches, folded
    // to conjugate-pair representatives. Unsorted, mass-preserving.
    void transform_minus(std::vector<ChannelSymbol>& out) const;
    void transform_plus(std::vector<ChannelSymbol>& out) const;

    // Error probability of the channel described by a raw symbol list.
    static double error_bound_raw(const std::vector<ChannelSymbol>& raw);

    // Collapses `raw` to at most max_reps representatives: sorts by key,
    // folds exact duplicates, then repeatedly merges the adjacent pair whose
    // merge loses the least capacity. Every merge yields a degraded channel,
    // so downstream error bounds stay valid upper bounds.
    static SymmetricChannel degrade_merge(std::vector<ChannelSymbol>& raw, std::size_t max_reps);

private:
    std::vector<ChannelSymbol> syms_;
};

} // namespace pcep
