#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcep/code_structure.hpp"
#include "pcep/protocol.hpp"

namespace pcep {

enum class ReportFormat { csv, json };

// Monte Carlo sweep over the grid n_exps x p_grid. Every random draw is
// derived from master_seed by a splittable scheme (see run_experiment), so
// reports are byte-identical across runs and across worker counts.
struct ExperimentConfig {
    std::vector<std::size_t> n_exps;
    std::vector<double> p_grid;
    std::uint64_t trials = 1000;
    double fer_target = 0.1;
    double pai_target = 1e-7;
    bool normalized_pai = false;
    std::size_t mu = 256;
    std::uint64_t master_seed = 42;
    std::string cache_path;   // reliability record file; empty keeps records in memory
    std::string output_path;  // consumed by the CLI, not by run_experiment
    ReportFormat format = ReportFormat::csv;
    bool record_timing = false;  // wall time would break byte-identical reports
};

// Throws DomainError unless trials >= 1, every p is in [0, 0.11], and every
// n_exp is in [4, 24].
void validate_config(const ExperimentConfig& cfg);

// Frame errors compare the delivered key (codeword positions) against the
// sender's key. Bit errors are counted on the decoded source-domain bits at
// the key positions, the quantity the per-position secrecy selection bounds;
// on the codeword side an attacker's raw tap already fixes the agreement
// level, so per-bit security is only meaningful in the source domain.
struct TrialOutcome {
    bool bob_frame_error = false;
    std::uint64_t bob_bit_errors = 0;
    bool eve_frame_error = false;
    std::uint64_t eve_bit_errors = 0;
};

// One cell's sessions, built once and shared read-only by all workers. A
// trial draws the sender key, frame randomness, and both channel noise
// streams from fixed substreams of trial_seed, so any scheduling of trials
// over threads yields the same outcomes.
struct TrialRunner {
    AliceSession alice;
    BobSession bob;
    EveSession eve;

    explicit TrialRunner(const CodeStructure& s);
    TrialOutcome run(std::uint64_t trial_seed) const;
};

// One-shot convenience wrapper for a single trial.
TrialOutcome run_trial(const CodeStructure& s, std::uint64_t trial_seed);

struct ReportRow {
    std::size_t n_exp = 0;
    double p_m = 0.0;
    double p_w = 0.0;
    double rate = 0.0;
    double rate_over_csec = 0.0;
    double bob_fer = 0.0;
    double bob_ber = 0.0;
    double eve_fer = 0.0;
    double eve_ber = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t anomalies = 0;
    double seconds = 0.0;
};

struct SimulationReport {
    std::vector<ReportRow> rows;
};

// Builds each cell's structure once, then runs cfg.trials independent
// trials. Trial seeds: derive(derive(derive(master_seed, n_exp), p_index),
// trial_index). PCEP_THREADS selects the worker count (default: hardware
// concurrency); aggregation is an integer reduction, so the count never
// changes the report. Inadmissible cells become rows with trials = 0.
SimulationReport run_experiment(const ExperimentConfig& cfg);

// Construction-only sweep: same rows and grid as run_experiment but with
// zero trials, so every Monte Carlo column is zero. cfg.trials is ignored.
SimulationReport rate_sweep(const ExperimentConfig& cfg);

// Header: n_exp,p_m,p_w,rate,rate_over_csec,bob_fer,bob_ber,eve_fer,eve_ber,
// trials,anomalies,seconds. Doubles use shortest round-trip formatting.
std::string report_csv(const SimulationReport& report);

// {"rows": [...]} with one object per row, same field names as the CSV.
std::string report_json(const SimulationReport& report);

// Writes the chosen rendering to path; IoError carries the path.
void emit_report(const SimulationReport& report, ReportFormat format, const std::string& path);

} // namespace pcep
