#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isac/channel.hpp"
#include "isac/config.hpp"
#include "isac/jamming.hpp"
#include "isac/solver.hpp"

namespace isac {

/// Deterministic inputs shared by every design-driven experiment: the
/// modulated block s (bits from the seed's "bits" stream) and the jamming
/// operator.
struct DesignInputs {
    cvec s;
    TransferMatrix J;
    Constellation constellation;
};
DesignInputs make_design_inputs(const ScenarioConfig& config);

/// Trade-off baseline waveform for this scenario: anchored on the chirp,
/// fitted to the block s through a channel drawn from the dedicated
/// tradeoff_seed stream (independent of the design seed).
cvec reference_tradeoff_waveform(const ScenarioConfig& config, const cvec& s);

/// Plain-text persistence: "# config_hash=<16 hex>" then one "re,im" pair
/// per line at full precision (bit-exact reload).
void save_waveform(const std::string& path, const cvec& v, std::uint64_t hash);
std::pair<cvec, std::uint64_t> load_waveform(const std::string& path);

/// Solve the configured design and write waveform.txt, filter.txt, and
/// trace.csv into out_dir (created if missing). Returns the written paths
/// along with the solver result.
struct DesignArtifacts {
    SolverResult result;
    std::string waveform_path;
    std::string filter_path;
    std::string trace_path;
};
DesignArtifacts run_design(const ScenarioConfig& config, const std::string& out_dir);

/// Reload a saved design from dir, verify its config hash against this
/// config, and write evaluate.csv with the sidelobe/jamming/gain metrics.
struct EvaluateReport {
    double pslr_db = 0.0;
    double isl = 0.0;
    double il = 0.0;
    double lpg_db = 0.0;
    double papr = 0.0;
    std::string csv_path;
};
EvaluateReport run_evaluate(const ScenarioConfig& config, const std::string& dir);

/// Run the configured experiment kind and emit its CSV file(s) into out_dir.
/// Fully deterministic given the config (seed included); rerunning writes
/// byte-identical files. threads only fans out Monte-Carlo trials, whose
/// per-trial streams are order-independent.
std::vector<std::string> run_experiment(const ScenarioConfig& config,
                                        const std::string& out_dir,
                                        unsigned threads = 1);

}  // namespace isac
