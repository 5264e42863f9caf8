#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pcep/code_structure.hpp"
#include "pcep/errors.hpp"
#include "pcep/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
    double fer_target = 0.1;
    double pai_target = 1e-7;
    bool normalized_pai = false;
    std::size_t mu = 256;
    std::string cache_path;
    std::string out_path;
};

void add_common(CLI::App& cmd, CommonOpts& o) {
    cmd.add_option("--fer-target", o.fer_target,
                   "Frame-error budget split across decoded positions");
    cmd.add_option("--pai-target", o.pai_target,
                   "Leakage budget split across the wiretapper's positions");
    cmd.add_flag("--normalized-pai", o.normalized_pai,
                 "Treat the leakage budget as per-bit instead of per-block");
    cmd.add_option("--mu", o.mu, "Output alphabet bound for the reliability construction");
    cmd.add_option("--cache", o.cache_path,
                   "Reliability record file, reused across runs and grid cells");
    cmd.add_option("--out", o.out_path, "Output file (default: stdout)");
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw pcep::IoError("cannot open output file for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw pcep::IoError("failed to write output file: " + path);
}

void write_report(const pcep::SimulationReport& report, const pcep::ExperimentConfig& cfg) {
    const std::string text = cfg.format == pcep::ReportFormat::csv ? pcep::report_csv(report)
                                                                   : pcep::report_json(report);
    write_text(text, cfg.output_path);
}

pcep::ExperimentConfig to_config(const CommonOpts& o, const std::string& format) {
    pcep::ExperimentConfig cfg;
    cfg.fer_target = o.fer_target;
    cfg.pai_target = o.pai_target;
    cfg.normalized_pai = o.normalized_pai;
    cfg.mu = o.mu;
    cfg.cache_path = o.cache_path;
    cfg.output_path = o.out_path;
    cfg.format = format == "json" ? pcep::ReportFormat::json : pcep::ReportFormat::csv;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiretap polar codes for one-step key reconciliation and distillation"};
    app.require_subcommand(1);

    CommonOpts sim_opts;
    std::vector<std::size_t> sim_n_exps;
    std::vector<double> sim_p_grid;
    std::uint64_t sim_trials = 1000;
    std::uint64_t sim_seed = 42;
    std::string sim_format = "csv";
    bool sim_timing = false;
    CLI::App* sim = app.add_subcommand(
        "sim", "Monte Carlo sweep: reliability and leakage rates per grid cell");
    sim->add_option("--n-exp", sim_n_exps, "Block-size exponents (N = 2^n), e.g. 10,12")
        ->required()
        ->delimiter(',');
    sim->add_option("--p", sim_p_grid, "Main-channel crossover probabilities, e.g. 0.01,0.02")
        ->required()
        ->delimiter(',');
    sim->add_option("--trials", sim_trials, "Monte Carlo trials per grid cell");
    sim->add_option("--seed", sim_seed, "Master seed; reruns reproduce reports byte-for-byte");
    sim->add_option("--format", sim_format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_flag("--timing", sim_timing,
                  "Record per-cell wall time (breaks byte-identical reruns)");
    add_common(*sim, sim_opts);

    CommonOpts rate_opts;
    std::vector<std::size_t> rate_n_exps;
    std::vector<double> rate_p_grid;
    std::string rate_format = "csv";
    bool rate_timing = false;
    CLI::App* rate = app.add_subcommand(
        "rate", "Construction-only sweep: code rate per grid cell, no Monte Carlo");
    rate->add_option("--n-exp", rate_n_exps, "Block-size exponents (N = 2^n)")
        ->required()
        ->delimiter(',');
    rate->add_option("--p-grid", rate_p_grid, "Main-channel crossover probabilities")
        ->required()
        ->delimiter(',');
    rate->add_option("--format", rate_format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    rate->add_flag("--timing", rate_timing, "Record per-cell construction wall time");
    add_common(*rate, rate_opts);

    CommonOpts con_opts;
    std::size_t con_n_exp = 12;
    double con_p = 0.02;
    CLI::App* con = app.add_subcommand(
        "construct", "Emit one code structure (index sets, rate, digest input) as JSON");
    con->add_option("--p", con_p, "Main-channel crossover probability")->required();
    con->add_option("--n-exp", con_n_exp, "Block-size exponent (N = 2^n)")->required();
    add_common(*con, con_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) {
            pcep::ExperimentConfig cfg = to_config(sim_opts, sim_format);
            cfg.n_exps = sim_n_exps;
            cfg.p_grid = sim_p_grid;
            cfg.trials = sim_trials;
            cfg.master_seed = sim_seed;
            cfg.record_timing = sim_timing;
            write_report(pcep::run_experiment(cfg), cfg);
        } else if (rate->parsed()) {
            pcep::ExperimentConfig cfg = to_config(rate_opts, rate_format);
            cfg.n_exps = rate_n_exps;
            cfg.p_grid = rate_p_grid;
            cfg.record_timing = rate_timing;
            write_report(pcep::rate_sweep(cfg), cfg);
        } else if (con->parsed()) {
            pcep::PartitionTargets targets;
            targets.fer_target = con_opts.fer_target;
            targets.pai_target = con_opts.pai_target;
            targets.normalized_pai = con_opts.normalized_pai;
            std::optional<pcep::ReliabilityCache> cache;
            if (!con_opts.cache_path.empty()) cache.emplace(con_opts.cache_path);
            pcep::CodeStructure s = pcep::build_code_structure(
                con_p, con_n_exp, targets, con_opts.mu, cache ? &*cache : nullptr);
            write_text(pcep::structure_json(s) + "\n", con_opts.out_path);
        }
    } catch (const pcep::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const pcep::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const pcep::InadmissibleQberError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
