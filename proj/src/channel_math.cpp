#include "pcep/channel_math.hpp"

#include <cmath>

#include "pcep/errors.hpp"

namespace pcep {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("binary_entropy: p must lie in [0, 1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double inverse_binary_entropy(double h) {
    if (!(h >= 0.0 && h <= 1.0))
        throw DomainError("inverse_binary_entropy: h must lie in [0, 1]");
    if (h == 0.0) return 0.0;
    if (h == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < h)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double wiretap_crossover(double p_m) {
    if (!(p_m >= 0.0 && p_m <= 0.5))
        throw DomainError("wiretap_crossover: p_m must lie in [0, 0.5]");
    return inverse_binary_entropy(1.0 - binary_entropy(p_m));
}

CapacitySummary capacity_summary(double p_m) {
    double h = binary_entropy(p_m);
    CapacitySummary s{};
    s.main_capacity = 1.0 - h;
    s.wiretap_capacity = h;
    s.secrecy_capacity = 1.0 - 2.0 * h;
    s.admissible = s.secrecy_capacity >= 0.0;
    return s;
}

} // namespace pcep
