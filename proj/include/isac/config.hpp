#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isac/baseline.hpp"
#include "isac/channel.hpp"
#include "isac/jamming.hpp"
#include "isac/radar.hpp"
#include "isac/solver.hpp"

namespace isac {

enum class ExperimentKind {
    convergence,
    pulse_compression,
    delay_doppler,
    ser_sweep,
    beta_sweep,
    epsilon_tradeoff,
    phase_compare,
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

struct WaveformParams {
    std::size_t length = 64;        ///< L
    double pulse_width = 6.4e-6;    ///< seconds; must satisfy L = floor(T_p / t_s)
    double bandwidth = 10e6;        ///< Hz
    double sample_interval = 1e-7;  ///< seconds
};

/// Full description of one run: scenario, solver weights, channel, scene,
/// and experiment selection. Built from presets plus key=value overrides.
struct ScenarioConfig {
    ExperimentKind experiment = ExperimentKind::convergence;
    std::uint64_t seed = 1;
    std::string output;  ///< output directory; empty defers to the caller

    WaveformParams waveform;
    JammerSpec jammer;  ///< length/sample_interval mirror the waveform block
    SolverConfig solver;

    std::vector<std::size_t> channel_delays{0, 5, 8};
    ConstellationKind constellation = ConstellationKind::QPSK;

    EchoScene scene;

    std::vector<double> ser_snr_grid{0.0, 4.0, 8.0, 12.0, 16.0};
    std::size_t ser_trials = 300;

    TradeoffConfig tradeoff;
    std::uint64_t tradeoff_seed = 1;
};

/// Ordered flat key -> value view of a config file.
using KeyValueMap = std::map<std::string, std::string>;

/// Parse "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Throws std::invalid_argument naming the offending line or duplicated key.
KeyValueMap parse_key_values(const std::string& text);

/// Names of the built-in presets.
std::vector<std::string> preset_names();

/// Fully-populated config for a preset name. Throws std::invalid_argument
/// for unknown names.
ScenarioConfig preset_config(const std::string& name);

/// Build a validated config from parsed keys. An optional "preset" key picks
/// the base (default "desk-pprj"); remaining keys override single fields.
/// Unknown keys and invariant violations throw std::invalid_argument naming
/// the key(s) involved.
ScenarioConfig config_from_map(const KeyValueMap& kv);

/// config_from_map over the parsed file contents.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig load_config_text(const std::string& text);

/// Canonical flat rendering of every field (except the output path), stable
/// across round-trips; load_config_text(serialize(c)) reproduces c exactly.
std::string serialize(const ScenarioConfig& config);

/// FNV-1a hash of the canonical serialization minus the output path; stamps
/// saved waveforms so evaluations can detect config drift.
std::uint64_t config_hash(const ScenarioConfig& config);

}  // namespace isac
