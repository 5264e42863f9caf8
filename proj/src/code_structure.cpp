#include "pcep/code_structure.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "pcep/channel_math.hpp"
#include "pcep/construction.hpp"
#include "pcep/errors.hpp"

namespace pcep {

namespace {

// Indices ordered by value ascending, equal values by index ascending, so
// both endpoints produce the same order on any platform.
std::vector<std::uint32_t> order_by_value(const std::vector<double>& v) {
    std::vector<std::uint32_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
    });
    return idx;
}

IndexSplit split_by_budget(const std::vector<double>& v, double budget) {
    IndexSplit out;
    std::vector<std::uint32_t> order = order_by_value(v);
    double sum = 0.0;
    std::size_t taken = 0;
    for (; taken < order.size(); ++taken) {
        double next = sum + v[order[taken]];
        if (next > budget) break;
        sum = next;
    }
    out.selected.assign(order.begin(), order.begin() + taken);
    out.rest.assign(order.begin() + taken, order.end());
    std::sort(out.selected.begin(), out.selected.end());
    std::sort(out.rest.begin(), out.rest.end());
    return out;
}

} // namespace

IndexSplit select_good_main(const std::vector<double>& bounds, double fer_target) {
    if (bounds.empty())
        throw DomainError("select_good_main: empty reliability vector");
    if (!(fer_target > 0.0) || fer_target >= 1.0)
        throw DomainError("select_good_main: fer_target must be in (0, 1)");
    return split_by_budget(bounds, fer_target);
}

IndexSplit select_bad_wiretap(const std::vector<double>& wiretap_bounds, double pai_target,
                              bool normalized) {
    if (wiretap_bounds.empty())
        throw DomainError("select_bad_wiretap: empty reliability vector");
    if (!(pai_target > 0.0))
        throw DomainError("select_bad_wiretap: pai_target must be positive");
    std::vector<double> capacity(wiretap_bounds.size());
    for (std::size_t i = 0; i < wiretap_bounds.size(); ++i) {
        double b = std::min(std::max(wiretap_bounds[i], 0.0), 0.5);
        capacity[i] = 1.0 - binary_entropy(b);
    }
    double budget = normalized ? pai_target * double(wiretap_bounds.size()) : pai_target;
    return split_by_budget(capacity, budget);
}

const std::vector<double>& ReliabilityCache::get(double p, std::size_t n_exp, std::size_t mu) {
    Key key{p, n_exp, mu};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const int n = static_cast<int>(n_exp);
    const std::uint32_t m = static_cast<std::uint32_t>(mu);
    if (!file_path_.empty()) {
        auto cached = find_reliability_record(file_path_, p, n, m);
        if (cached) return memo_.emplace(key, std::move(*cached)).first->second;
    }
    std::vector<double> bounds = polarize_reliabilities(p, n, m);
    if (!file_path_.empty()) append_reliability_record(file_path_, p, n, m, bounds);
    return memo_.emplace(key, std::move(bounds)).first->second;
}

CodeStructure build_code_structure(double p_m, std::size_t n_exp, const PartitionTargets& targets,
                                   std::size_t mu, ReliabilityCache* cache) {
    CapacitySummary summary = capacity_summary(p_m);
    if (!summary.admissible)
        throw InadmissibleQberError("build_code_structure: secrecy capacity is negative");

    CodeStructure s;
    s.n_exp = n_exp;
    s.mu = mu;
    s.p_m = p_m;
    s.p_w = wiretap_crossover(p_m);
    s.fer_target = targets.fer_target;
    s.pai_target = targets.pai_target;

    ReliabilityCache local;
    ReliabilityCache& rc = cache ? *cache : local;
    const std::vector<double>& main_bounds = rc.get(p_m, n_exp, mu);
    const std::vector<double>& wire_bounds = rc.get(s.p_w, n_exp, mu);

    IndexSplit main_split = select_good_main(main_bounds, targets.fer_target);
    IndexSplit wire_split = select_bad_wiretap(wire_bounds, targets.pai_target,
                                               targets.normalized_pai);

    const std::size_t n = s.block_length();
    std::vector<std::uint8_t> good_main(n, 0), bad_wire(n, 0);
    for (std::uint32_t i : main_split.selected) good_main[i] = 1;
    for (std::uint32_t i : wire_split.selected) bad_wire[i] = 1;

    for (std::uint32_t i = 0; i < n; ++i) {
        if (!bad_wire[i]) {
            // Useful to the wiretapper: either published randomness, or an
            // anomaly if the legitimate receiver cannot even decode it.
            if (good_main[i]) {
                s.set_r.push_back(i);
            } else {
                ++s.anomaly_count;
                s.set_b.push_back(i);
            }
        } else if (good_main[i]) {
            s.set_a.push_back(i);
        } else {
            s.set_b.push_back(i);
        }
    }
    s.rate = double(s.set_a.size()) / double(n);
    return s;
}

std::string structure_json(const CodeStructure& s) {
    nlohmann::json j;
    j["n_exp"] = s.n_exp;
    j["mu"] = s.mu;
    j["p_m"] = s.p_m;
    j["p_w"] = s.p_w;
    j["fer_target"] = s.fer_target;
    j["pai_target"] = s.pai_target;
    j["r"] = s.set_r;
    j["a"] = s.set_a;
    j["b"] = s.set_b;
    j["rate"] = s.rate;
    j["anomaly_count"] = s.anomaly_count;
    return j.dump();
}

std::uint64_t structure_digest(const CodeStructure& s) {
    std::string text = structure_json(s);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace pcep
