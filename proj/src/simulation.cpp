#include "pcep/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <thread>

#include "json.hpp"

#include "pcep/channel_math.hpp"
#include "pcep/errors.hpp"
#include "pcep/rng.hpp"

namespace pcep {

namespace {

// Per-trial substream tags.
constexpr std::uint64_t kKeyTag = 1;    // sender key bits
constexpr std::uint64_t kFrameTag = 2;  // randomized frame positions
constexpr std::uint64_t kBobTag = 3;    // main-channel noise
constexpr std::uint64_t kEveTag = 4;    // wiretap-channel noise

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::size_t worker_count(std::uint64_t trials) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PCEP_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
    }
    n = std::min<std::size_t>(n, 256);
    if (trials > 0) n = std::min<std::size_t>(n, trials);
    return std::max<std::size_t>(n, 1);
}

struct CellCounts {
    std::uint64_t bob_frames = 0;
    std::uint64_t bob_bits = 0;
    std::uint64_t eve_frames = 0;
    std::uint64_t eve_bits = 0;

    void add(const TrialOutcome& t) {
        bob_frames += t.bob_frame_error ? 1 : 0;
        bob_bits += t.bob_bit_errors;
        eve_frames += t.eve_frame_error ? 1 : 0;
        eve_bits += t.eve_bit_errors;
    }
};

CellCounts run_cell(const TrialRunner& runner, std::uint64_t cell_seed, std::uint64_t trials) {
    std::size_t workers = worker_count(trials);
    std::vector<CellCounts> parts(workers);
    auto work = [&](std::size_t w) {
        CellCounts local;
        for (std::uint64_t t = w; t < trials; t += workers)
            local.add(runner.run(derive_seed(cell_seed, t)));
        parts[w] = local;
    };
    std::vector<std::thread> pool;
    pool.reserve(workers > 0 ? workers - 1 : 0);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();

    CellCounts total;
    for (const auto& part : parts) {
        total.bob_frames += part.bob_frames;
        total.bob_bits += part.bob_bits;
        total.eve_frames += part.eve_frames;
        total.eve_bits += part.eve_bits;
    }
    return total;
}

ReportRow make_row(const CodeStructure& s, const CellCounts& c, std::uint64_t trials,
                   double seconds) {
    ReportRow r;
    r.n_exp = s.n_exp;
    r.p_m = s.p_m;
    r.p_w = s.p_w;
    r.rate = s.rate;
    r.rate_over_csec = s.rate / std::max(capacity_summary(s.p_m).secrecy_capacity, 1e-12);
    const double frames = static_cast<double>(trials);
    const double key_bits = frames * static_cast<double>(s.set_a.size());
    if (trials > 0) {
        r.bob_fer = static_cast<double>(c.bob_frames) / frames;
        r.eve_fer = static_cast<double>(c.eve_frames) / frames;
    }
    if (key_bits > 0.0) {
        r.bob_ber = static_cast<double>(c.bob_bits) / key_bits;
        r.eve_ber = static_cast<double>(c.eve_bits) / key_bits;
    }
    r.trials = trials;
    r.anomalies = s.anomaly_count;
    r.seconds = seconds;
    return r;
}

} // namespace

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw DomainError("trials must be at least 1");
    for (double p : cfg.p_grid)
        if (!(p >= 0.0) || p > 0.11)
            throw DomainError("crossover probabilities must lie in [0, 0.11]");
    for (std::size_t n : cfg.n_exps)
        if (n < 4 || n > 24) throw DomainError("block-size exponents must lie in [4, 24]");
}

TrialRunner::TrialRunner(const CodeStructure& s) : alice(s), bob(s), eve(s) {}

TrialOutcome TrialRunner::run(std::uint64_t trial_seed) const {
    const CodeStructure& s = alice.structure();
    BitSampler key_rng(derive_seed(trial_seed, kKeyTag));
    BitVec ka = key_rng.uniform_bits(s.set_a.size());
    auto prep = alice.prepare(ka, derive_seed(trial_seed, kFrameTag));

    BitSampler bob_rng(derive_seed(trial_seed, kBobTag));
    BitVec kb = ka;
    for (auto& bit : kb) bit ^= bob_rng.bernoulli(s.p_m) ? 1 : 0;
    BitSampler eve_rng(derive_seed(trial_seed, kEveTag));
    BitVec ke = ka;
    for (auto& bit : ke) bit ^= eve_rng.bernoulli(s.p_w) ? 1 : 0;

    TrialOutcome out;
    ReconciliationResult bres = bob.reconcile(kb, prep.msg);
    out.bob_frame_error = bres.final_key != ka;
    out.bob_bit_errors = hamming_distance(bres.info_bits, prep.info_bits);
    ReconciliationResult eres = eve.attack(ke, prep.msg);
    out.eve_frame_error = eres.final_key != ka;
    out.eve_bit_errors = hamming_distance(eres.info_bits, prep.info_bits);
    return out;
}

TrialOutcome run_trial(const CodeStructure& s, std::uint64_t trial_seed) {
    return TrialRunner(s).run(trial_seed);
}

namespace {

SimulationReport sweep_impl(const ExperimentConfig& cfg, std::uint64_t trials) {
    std::optional<ReliabilityCache> file_cache;
    if (!cfg.cache_path.empty()) file_cache.emplace(cfg.cache_path);
    ReliabilityCache mem_cache;
    ReliabilityCache& cache = file_cache ? *file_cache : mem_cache;

    PartitionTargets targets;
    targets.fer_target = cfg.fer_target;
    targets.pai_target = cfg.pai_target;
    targets.normalized_pai = cfg.normalized_pai;

    SimulationReport report;
    for (std::size_t n_exp : cfg.n_exps) {
        const std::uint64_t n_seed = derive_seed(cfg.master_seed, n_exp);
        for (std::size_t p_idx = 0; p_idx < cfg.p_grid.size(); ++p_idx) {
            const double p_m = cfg.p_grid[p_idx];
            const auto t0 = std::chrono::steady_clock::now();
            CodeStructure s;
            try {
                s = build_code_structure(p_m, n_exp, targets, cfg.mu, &cache);
            } catch (const InadmissibleQberError&) {
                ReportRow skipped;
                skipped.n_exp = n_exp;
                skipped.p_m = p_m;
                skipped.p_w = 0.5;
                report.rows.push_back(skipped);
                continue;
            }
            // A block with no key positions cannot produce a key-bit or
            // frame error for anyone; skip the trial loop, keep the row.
            CellCounts counts;
            if (trials > 0 && !s.set_a.empty())
                counts = run_cell(TrialRunner(s), derive_seed(n_seed, p_idx), trials);
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            const double seconds = cfg.record_timing ? dt.count() : 0.0;
            report.rows.push_back(make_row(s, counts, trials, seconds));
        }
    }
    return report;
}

} // namespace

SimulationReport run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    return sweep_impl(cfg, cfg.trials);
}

SimulationReport rate_sweep(const ExperimentConfig& cfg) {
    ExperimentConfig checked = cfg;
    checked.trials = 1;
    validate_config(checked);
    return sweep_impl(checked, 0);
}

std::string report_csv(const SimulationReport& report) {
    std::string out =
        "n_exp,p_m,p_w,rate,rate_over_csec,bob_fer,bob_ber,eve_fer,eve_ber,"
        "trials,anomalies,seconds\n";
    for (const auto& r : report.rows) {
        out += std::to_string(r.n_exp);
        out += ',';
        out += format_double(r.p_m);
        out += ',';
        out += format_double(r.p_w);
        out += ',';
        out += format_double(r.rate);
        out += ',';
        out += format_double(r.rate_over_csec);
        out += ',';
        out += format_double(r.bob_fer);
        out += ',';
        out += format_double(r.bob_ber);
        out += ',';
        out += format_double(r.eve_fer);
        out += ',';
        out += format_double(r.eve_ber);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.anomalies);
        out += ',';
        out += format_double(r.seconds);
        out += '\n';
    }
    return out;
}

std::string report_json(const SimulationReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"n_exp", r.n_exp},
                        {"p_m", r.p_m},
                        {"p_w", r.p_w},
                        {"rate", r.rate},
                        {"rate_over_csec", r.rate_over_csec},
                        {"bob_fer", r.bob_fer},
                        {"bob_ber", r.bob_ber},
                        {"eve_fer", r.eve_fer},
                        {"eve_ber", r.eve_ber},
                        {"trials", r.trials},
                        {"anomalies", r.anomalies},
                        {"seconds", r.seconds}});
    }
    nlohmann::json j{{"rows", std::move(rows)}};
    return j.dump(2) + "\n";
}

void emit_report(const SimulationReport& report, ReportFormat format, const std::string& path) {
    const std::string text = format == ReportFormat::csv ? report_csv(report) : report_json(report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("failed to write report file: " + path);
}

} // namespace pcep
