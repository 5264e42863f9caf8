#include "pcep/discrete_channel.hpp"

#include <algorithm>
#include <cmath>

#include "pcep/errors.hpp"

namespace pcep {

namespace {

inline double symbol_key(double a, double b) {
    return std::log(a / b);  // +inf when b == 0
}

// Capacity contribution of one conjugate pair (both mirror symbols).
inline double pair_capacity(double a, double b) {
    double s = a + b;
    if (s <= 0.0) return 0.0;
    double c = 0.0;
    if (a > 0.0) c += a * std::log2(2.0 * a / s);
    if (b > 0.0) c += b * std::log2(2.0 * b / s);
    return c;
}

} // namespace

SymmetricChannel SymmetricChannel::bsc(double p) {
    if (!(p >= 0.0 && p <= 0.5))
        throw DomainError("SymmetricChannel::bsc: p must lie in [0, 0.5]");
    SymmetricChannel ch;
    ch.syms_.push_back({1.0 - p, p, symbol_key(1.0 - p, p)});
    return ch;
}

double SymmetricChannel::error_bound() const {
    return error_bound_raw(syms_);
}

double SymmetricChannel::error_bound_raw(const std::vector<ChannelSymbol>& raw) {
    // P_e = (1/2) sum over the full alphabet of min(P(y|0), P(y|1)); each
    // representative and its mirror contribute min(a, b) = b together.
    double e = 0.0;
    for (const auto& s : raw) e += s.b;
    return e;
}

double SymmetricChannel::capacity() const {
    double c = 0.0;
    for (const auto& s : syms_) c += pair_capacity(s.a, s.b);
    return c;
}

void SymmetricChannel::transform_minus(std::vector<ChannelSymbol>& out) const {
    // Output symbol classes for input pairs (y_i, y_j); the four sign
    // combinations fold onto one representative, and (i, j) ~ (j, i).
    out.clear();
    const std::size_t L = syms_.size();
    out.reserve(L * (L + 1) / 2);
    for (std::size_t i = 0; i < L; ++i) {
        const double xi = syms_[i].a, zi = syms_[i].b;
        {
            double a = xi * xi + zi * zi;
            double b = 2.0 * xi * zi;
            if (a + b > 0.0) out.push_back({a, b, symbol_key(a, b)});
        }
        for (std::size_t j = i + 1; j < L; ++j) {
            const double xj = syms_[j].a, zj = syms_[j].b;
            double a = 2.0 * (xi * xj + zi * zj);
            double b = 2.0 * (xi * zj + zi * xj);
            if (a + b > 0.0) out.push_back({a, b, symbol_key(a, b)});
        }
    }
}

void SymmetricChannel::transform_plus(std::vector<ChannelSymbol>& out) const {
    // Two classes per unordered input pair: aligned observations with key
    // k_i + k_j, and conflicting observations with key |k_j - k_i|.
    out.clear();
    const std::size_t L = syms_.size();
    out.reserve(L * (L + 1));
    for (std::size_t i = 0; i < L; ++i) {
        const double xi = syms_[i].a, zi = syms_[i].b;
        const double ki = syms_[i].key;
        {
            double a = xi * xi;
            double b = zi * zi;
            if (a + b > 0.0) out.push_back({a, b, ki + ki});
            double c = xi * zi;
            if (c > 0.0) out.push_back({c, c, 0.0});
        }
        for (std::size_t j = i + 1; j < L; ++j) {
            const double xj = syms_[j].a, zj = syms_[j].b;
            const double kj = syms_[j].key;
            double a1 = 2.0 * xi * xj, b1 = 2.0 * zi * zj;
            if (a1 + b1 > 0.0) out.push_back({a1, b1, ki + kj});
            // k_j >= k_i would put the larger component first, but key order
            // within the pair is what decides; normalize explicitly.
            double hi = 2.0 * zi * xj, lo = 2.0 * xi * zj;
            if (hi + lo > 0.0) {
                if (hi < lo) std::swap(hi, lo);
                double k = kj - ki;
                if (std::isnan(k)) k = 0.0;  // both infinite: equally certain
                out.push_back({hi, lo, std::abs(k)});
            }
        }
    }
}

namespace {

struct MergeCandidate {
    double loss;
    std::uint32_t left;
    std::uint32_t stamp;
};

// Flat 4-ary min-heap on loss; shallower and more cache friendly than a
// binary heap for the tens of thousands of candidates a merge can see.
class CandidateHeap {
public:
    void reserve(std::size_t n) { v_.reserve(n); }
    bool empty() const { return v_.empty(); }

    void push(MergeCandidate c) {
        v_.push_back(c);
        std::size_t i = v_.size() - 1;
        while (i > 0) {
            std::size_t parent = (i - 1) >> 2;
            if (v_[parent].loss <= v_[i].loss) break;
            std::swap(v_[parent], v_[i]);
            i = parent;
        }
    }

    MergeCandidate pop() {
        MergeCandidate top = v_[0];
        v_[0] = v_.back();
        v_.pop_back();
        std::size_t i = 0, n = v_.size();
        for (;;) {
            std::size_t base = (i << 2) + 1;
            if (base >= n) break;
            std::size_t best = base;
            std::size_t stop = std::min(base + 4, n);
            for (std::size_t k = base + 1; k < stop; ++k)
                if (v_[k].loss < v_[best].loss) best = k;
            if (v_[i].loss <= v_[best].loss) break;
            std::swap(v_[i], v_[best]);
            i = best;
        }
        return top;
    }

private:
    std::vector<MergeCandidate> v_;
};

// Beyond this key the minority component is too small to affect capacity in
// double precision, so all such symbols can be folded into one for free.
constexpr double kSaturatedKey = 500.0;

} // namespace

SymmetricChannel SymmetricChannel::degrade_merge(std::vector<ChannelSymbol>& raw, std::size_t max_reps) {
    if (max_reps == 0)
        throw DomainError("degrade_merge: max_reps must be positive");

    // Fold all saturated symbols into one before sorting; their capacities are
    // indistinguishable from 1 bit in double precision, so this is loss free
    // and sharply shrinks alphabets once polarization sets in.
    {
        ChannelSymbol sat{0.0, 0.0, kSaturatedKey};
        std::size_t w = 0;
        for (std::size_t r = 0; r < raw.size(); ++r) {
            if (raw[r].key >= kSaturatedKey) {
                sat.a += raw[r].a;
                sat.b += raw[r].b;
            } else {
                raw[w++] = raw[r];
            }
        }
        if (sat.a > 0.0 || sat.b > 0.0) {
            raw.resize(w + 1);
            raw[w] = sat;
        } else {
            raw.resize(w);
        }
    }

    std::sort(raw.begin(), raw.end(),
              [](const ChannelSymbol& x, const ChannelSymbol& y) { return x.key < y.key; });

    // Fold runs of (numerically) identical likelihood ratios; this costs no
    // capacity and keeps alphabets small at shallow recursion depths.
    std::size_t w = 0;
    for (std::size_t r = 0; r < raw.size(); ++r) {
        if (w > 0) {
            const ChannelSymbol& prev = raw[w - 1];
            bool same = (prev.key == raw[r].key) || (raw[r].key - prev.key <= 1e-12);
            if (same) {
                raw[w - 1].a += raw[r].a;
                raw[w - 1].b += raw[r].b;
                continue;
            }
        }
        raw[w++] = raw[r];
    }
    raw.resize(w);

    SymmetricChannel ch;
    if (raw.size() <= max_reps) {
        ch.syms_ = raw;
        for (auto& s : ch.syms_) s.key = symbol_key(s.a, s.b);
        return ch;
    }

    // Greedy minimum-capacity-loss merging of key-adjacent pairs. Lazy
    // deletion: stale heap entries are detected via per-slot stamps.
    const std::size_t n = raw.size();
    std::vector<double> cap(n);
    std::vector<std::uint32_t> next(n), prev(n), stamp(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        cap[i] = pair_capacity(raw[i].a, raw[i].b);
        next[i] = static_cast<std::uint32_t>(i + 1);
        prev[i] = static_cast<std::uint32_t>(i == 0 ? n : i - 1);
    }

    auto merge_loss = [&](std::uint32_t l, std::uint32_t r) {
        return cap[l] + cap[r] - pair_capacity(raw[l].a + raw[r].a, raw[l].b + raw[r].b);
    };

    CandidateHeap heap;
    heap.reserve(3 * n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        heap.push({merge_loss(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1)),
                   static_cast<std::uint32_t>(i), 0});

    std::size_t alive = n;
    while (alive > max_reps && !heap.empty()) {
        MergeCandidate c = heap.pop();
        std::uint32_t l = c.left;
        if (stamp[l] != c.stamp || next[l] >= n) continue;  // stale
        std::uint32_t r = next[l];
        raw[l].a += raw[r].a;
        raw[l].b += raw[r].b;
        cap[l] = pair_capacity(raw[l].a, raw[l].b);
        ++stamp[l];
        stamp[r] = ~0u;
        next[l] = next[r];
        if (next[r] < n) prev[next[r]] = l;
        --alive;
        if (next[l] < n) heap.push({merge_loss(l, next[l]), l, stamp[l]});
        if (prev[l] < n) {
            ++stamp[prev[l]];
            heap.push({merge_loss(prev[l], l), prev[l], stamp[prev[l]]});
        }
    }

    ch.syms_.reserve(alive);
    for (std::uint32_t i = 0; i < n; i = next[i]) {
        ChannelSymbol s = raw[i];
        s.key = symbol_key(s.a, s.b);
        ch.syms_.push_back(s);
    }
    return ch;
}

} // namespace pcep
