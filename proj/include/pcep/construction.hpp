#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcep {

// Upper bounds on the decision error probability of every synthetic
// subchannel of a BSC(p) polarized n_exp times, computed with quantized
// channel degradation capped at mu output symbols per intermediate channel.
// Index order is the source-domain order of the encoder x = u * F^{(x)n}:
// index 0 is the fully check-combined subchannel, index N-1 the cleanest.
std::vector<double> polarize_reliabilities(double p, int n_exp, std::uint32_t mu = 256);

// Exact decision error probability of subchannel `index` by direct
// enumeration of output vectors and preceding source bits (genie-aided).
// Only feasible for n_exp <= 3.
double exact_subchannel_error(double p, int n_exp, std::uint32_t index);

// Binary cache of computed reliability vectors, keyed by (p, n_exp, mu).
// Records are appended verbatim and reloaded bit-exactly.
void append_reliability_record(const std::string& path, double p, int n_exp,
                               std::uint32_t mu, const std::vector<double>& bounds);
std::optional<std::vector<double>> find_reliability_record(const std::string& path, double p,
                                                           int n_exp, std::uint32_t mu);

} // namespace pcep
