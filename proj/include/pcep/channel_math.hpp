#pragma once

namespace pcep {

// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double p);

// Inverse of binary_entropy restricted to [0, 0.5], by bisection.
double inverse_binary_entropy(double h);

// Crossover probability of the eavesdropper channel paired with a main
// channel of crossover p_m: the wiretap capacity equals the main channel's
// equivocation, 1 - h(p_w) = h(p_m).
double wiretap_crossover(double p_m);

struct CapacitySummary {
    double main_capacity;     // 1 - h(p_m)
    double wiretap_capacity;  // 1 - h(p_w) = h(p_m)
    double secrecy_capacity;  // main - wiretap = 1 - 2 h(p_m)
    bool admissible;          // secrecy_capacity >= 0
};

CapacitySummary capacity_summary(double p_m);

} // namespace pcep
