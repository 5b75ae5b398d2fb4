#include "isac/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "isac/baseline.hpp"
#include "isac/radar.hpp"
#include "isac/rng.hpp"
#include "isac/signal.hpp"

namespace isac {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string ensure_dir(const std::string& dir) {
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<int> draw_bits(const ScenarioConfig& config, std::size_t count) {
    Rng rng(config.seed, "bits");
    std::vector<int> bits(count);
    for (auto& b : bits) b = static_cast<int>(rng.next_bit());
    return bits;
}

std::string trace_csv(const std::vector<IterationRecord>& trace) {
    std::ostringstream out;
    out << "# per-iteration solver trace; composite/isl/il/similarity are linear "
           "power sums, eps_gap is the iterate gap (linear), lpg_db is in dB, "
           "fallback flags a rejected extrapolation\n";
    out << "iter,composite,isl,il,similarity,eps_gap,lpg_db,fallback\n";
    for (const auto& r : trace)
        out << r.iteration << ',' << fmt(r.composite) << ',' << fmt(r.isl) << ','
            << fmt(r.il) << ',' << fmt(r.similarity) << ',' << fmt(r.eps_gap) << ','
            << fmt(r.lpg_db) << ',' << (r.fallback ? 1 : 0) << '\n';
    return out.str();
}

double jam_peak_db(const cvec& x, const cvec& w, const TransferMatrix& J) {
    const cvec c_target = xcorr_fft(x, w);
    const cvec c_jam = xcorr_fft(J.apply(x), w);
    double target_peak = 0.0, jam_peak = 0.0;
    for (const auto& v : c_target) target_peak = std::max(target_peak, std::abs(v));
    for (const auto& v : c_jam) jam_peak = std::max(jam_peak, std::abs(v));
    return amplitude_db(jam_peak / target_peak);
}

std::string run_convergence(const ScenarioConfig& config, const std::string& out_dir) {
    const DesignInputs inputs = make_design_inputs(config);
    const SolverResult result = solve(inputs.s, inputs.J, config.solver);
    const std::string path = out_dir + "/convergence.csv";
    write_file(path, trace_csv(result.trace));
    return path;
}

std::string run_pulse_compression(const ScenarioConfig& config,
                                  const std::string& out_dir) {
    const DesignInputs inputs = make_design_inputs(config);
    const SolverResult designed = solve(inputs.s, inputs.J, config.solver);
    const cvec lfm =
        lfm_waveform(config.waveform.length, config.waveform.bandwidth,
                     config.waveform.pulse_width, config.waveform.sample_interval);
    const cvec tradeoff = reference_tradeoff_waveform(config, inputs.s);

    struct Variant {
        const char* name;
        const cvec* x;
        const cvec* w;
    };
    const Variant variants[] = {
        {"designed", &designed.x, &designed.w},
        {"lfm_matched", &lfm, &lfm},
        {"tradeoff_matched", &tradeoff, &tradeoff},
    };

    EchoScene single_pulse = config.scene;
    single_pulse.pulses = 1;

    std::vector<std::vector<double>> profiles;
    std::ptrdiff_t first_lag = 0;
    for (const auto& v : variants) {
        // Identical noise stream per variant keeps the comparison paired.
        Rng noise(config.seed, "pc noise");
        const auto echoes = synthesize_echoes(single_pulse, *v.x, inputs.J, noise);
        const RangeProfile profile = pulse_compress(echoes.front(), *v.w);
        profiles.push_back(profile_db(profile));
        first_lag = profile.first_lag;
    }

    std::ostringstream out;
    out << "# single-pulse range profiles; delay_bin in samples, magnitudes in dB "
           "relative to each profile's peak\n";
    out << "delay_bin";
    for (const auto& v : variants) out << ',' << v.name << "_db";
    out << '\n';
    for (std::size_t i = 0; i < profiles.front().size(); ++i) {
        out << (first_lag + static_cast<std::ptrdiff_t>(i));
        for (const auto& p : profiles) out << ',' << fmt(p[i]);
        out << '\n';
    }
    const std::string path = out_dir + "/pulse_compression.csv";
    write_file(path, out.str());
    return path;
}

std::string run_delay_doppler(const ScenarioConfig& config, const std::string& out_dir) {
    const DesignInputs inputs = make_design_inputs(config);
    const SolverResult designed = solve(inputs.s, inputs.J, config.solver);
    Rng noise(config.seed, "dd noise");
    const auto echoes = synthesize_echoes(config.scene, designed.x, inputs.J, noise);
    const DelayDopplerMap map = delay_doppler_map(echoes, designed.w, 201);

    double peak = 0.0;
    for (const auto& row : map.magnitudes)
        for (const double v : row) peak = std::max(peak, v);

    std::ostringstream out;
    out << "# Doppler filter-bank map; doppler_idx i maps to theta = -pi + "
           "2*pi*i/(M-1) radians per pulse, delay_bin in samples, magnitude in dB "
           "relative to the map peak\n";
    out << "doppler_idx,delay_bin,magnitude_db\n";
    for (std::size_t i = 0; i < map.magnitudes.size(); ++i)
        for (std::size_t k = 0; k < map.magnitudes[i].size(); ++k)
            out << i << ',' << (map.first_lag + static_cast<std::ptrdiff_t>(k)) << ','
                << fmt(amplitude_db(map.magnitudes[i][k] / peak)) << '\n';
    const std::string path = out_dir + "/delay_doppler.csv";
    write_file(path, out.str());
    return path;
}

std::string run_ser_sweep(const ScenarioConfig& config, const std::string& out_dir,
                          unsigned threads) {
    const DesignInputs inputs = make_design_inputs(config);
    const ChannelSpec spec{config.channel_delays, {}};

    const DesignFn pass_through = [](const cvec& s) { return s; };
    const DesignFn designed = [&](const cvec& s) {
        return solve(s, inputs.J, config.solver).x;
    };

    std::ostringstream out;
    out << "# Monte-Carlo symbol error rate; snr_db is per-sample received signal "
           "power over noise variance in dB, ser is a fraction, trials counts "
           "Monte-Carlo runs per point\n";
    out << "snr_db,ser,trials,variant\n";
    for (const auto& [name, fn] :
         {std::pair<const char*, const DesignFn*>{"com_only", &pass_through},
          std::pair<const char*, const DesignFn*>{"designed", &designed}}) {
        const auto curve = monte_carlo_ser(*fn, spec, inputs.constellation,
                                           config.waveform.length, config.ser_snr_grid,
                                           config.ser_trials, config.seed, threads);
        for (const auto& pt : curve)
            out << fmt(pt.snr_db) << ',' << fmt(pt.ser) << ',' << pt.trials << ','
                << name << '\n';
    }
    const std::string path = out_dir + "/ser_sweep.csv";
    write_file(path, out.str());
    return path;
}

std::string run_beta_sweep(const ScenarioConfig& config, const std::string& out_dir,
                           unsigned threads) {
    const DesignInputs inputs = make_design_inputs(config);
    const ChannelSpec spec{config.channel_delays, {}};
    const double mid_snr = config.ser_snr_grid[config.ser_snr_grid.size() / 2];

    std::ostringstream out;
    out << "# processing-gain / jamming-peak / SER trade against the gain-penalty "
           "weight; lpg_db and jam_peak_db in dB, ser a fraction at snr_db = "
        << fmt(mid_snr) << "\n";
    out << "beta1,lpg_db,jam_peak_db,ser\n";
    for (const double beta1 : {0.12, 0.3, 0.5}) {
        SolverConfig solver = config.solver;
        solver.beta1 = beta1;
        solver.beta2 = 1.0 - beta1;
        const SolverResult design = solve(inputs.s, inputs.J, solver);
        const DesignFn fn = [&](const cvec& s) { return solve(s, inputs.J, solver).x; };
        const auto curve =
            monte_carlo_ser(fn, spec, inputs.constellation, config.waveform.length,
                            {mid_snr}, config.ser_trials, config.seed, threads);
        out << fmt(beta1) << ',' << fmt(lpg_db(design.x, design.w)) << ','
            << fmt(jam_peak_db(design.x, design.w, inputs.J)) << ','
            << fmt(curve.front().ser) << '\n';
    }
    const std::string path = out_dir + "/beta_sweep.csv";
    write_file(path, out.str());
    return path;
}

std::string run_epsilon_tradeoff(const ScenarioConfig& config,
                                 const std::string& out_dir) {
    const DesignInputs inputs = make_design_inputs(config);
    std::ostringstream out;
    out << "# sidelobe/jamming energies of converged designs against the "
           "similarity weight; isl and il are linear power sums\n";
    out << "epsilon,isl,il\n";
    for (const double eps : {0.0, 1.0, 2.0, 3.0}) {
        SolverConfig solver = config.solver;
        solver.epsilon = eps;
        const SolverResult design = solve(inputs.s, inputs.J, solver);
        const ObjectiveRecord obj =
            objective(design.x, design.w, inputs.s, inputs.J,
                      solver.resolved(config.waveform.length));
        out << fmt(eps) << ',' << fmt(obj.isl) << ',' << fmt(obj.il) << '\n';
    }
    const std::string path = out_dir + "/epsilon_tradeoff.csv";
    write_file(path, out.str());
    return path;
}

std::string run_phase_compare(const ScenarioConfig& config, const std::string& out_dir) {
    const DesignInputs inputs = make_design_inputs(config);
    const SolverResult design = solve(inputs.s, inputs.J, config.solver);
    std::ostringstream out;
    out << "# element-wise phases of the communication block and the designed "
           "waveform, in radians\n";
    out << "index,phase_s,phase_x\n";
    for (std::size_t l = 0; l < design.x.size(); ++l)
        out << l << ',' << fmt(std::arg(inputs.s[l])) << ','
            << fmt(std::arg(design.x[l])) << '\n';
    const std::string path = out_dir + "/phase_compare.csv";
    write_file(path, out.str());
    return path;
}

}  // namespace

cvec reference_tradeoff_waveform(const ScenarioConfig& config, const cvec& s) {
    Rng rng(config.tradeoff_seed, "tradeoff channel");
    const MultipathChannel channel =
        build_channel(config.channel_delays, config.waveform.length, rng);
    const cvec chirp =
        lfm_waveform(config.waveform.length, config.waveform.bandwidth,
                     config.waveform.pulse_width, config.waveform.sample_interval);
    return tradeoff_waveform(channel, s, chirp, config.tradeoff);
}

DesignInputs make_design_inputs(const ScenarioConfig& config) {
    const Constellation constellation = make_constellation(config.constellation);
    const std::vector<int> bits =
        draw_bits(config, config.waveform.length * constellation.bits_per_symbol());
    return {modulate(bits, constellation), build_transfer_matrix(config.jammer),
            constellation};
}

void save_waveform(const std::string& path, const cvec& v, std::uint64_t hash) {
    std::ostringstream out;
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, hash);
    out << "# config_hash=" << hex << '\n';
    for (const auto& z : v) out << fmt_full(z.real()) << ',' << fmt_full(z.imag()) << '\n';
    write_file(path, out.str());
}

std::pair<cvec, std::uint64_t> load_waveform(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open waveform file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# config_hash=", 0) != 0)
        throw std::runtime_error("waveform file missing config_hash header: " + path);
    const std::uint64_t hash =
        std::strtoull(line.c_str() + std::string("# config_hash=").size(), nullptr, 16);
    cvec v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("waveform file line missing comma: " + path);
        v.emplace_back(std::strtod(line.substr(0, comma).c_str(), nullptr),
                       std::strtod(line.c_str() + comma + 1, nullptr));
    }
    return {std::move(v), hash};
}

DesignArtifacts run_design(const ScenarioConfig& config, const std::string& out_dir) {
    ensure_dir(out_dir);
    const DesignInputs inputs = make_design_inputs(config);
    DesignArtifacts artifacts;
    artifacts.result = solve(inputs.s, inputs.J, config.solver);
    const std::uint64_t hash = config_hash(config);
    artifacts.waveform_path = out_dir + "/waveform.txt";
    artifacts.filter_path = out_dir + "/filter.txt";
    artifacts.trace_path = out_dir + "/trace.csv";
    save_waveform(artifacts.waveform_path, artifacts.result.x, hash);
    save_waveform(artifacts.filter_path, artifacts.result.w, hash);
    write_file(artifacts.trace_path, trace_csv(artifacts.result.trace));
    return artifacts;
}

EvaluateReport run_evaluate(const ScenarioConfig& config, const std::string& dir) {
    const auto [x, hash_x] = load_waveform(dir + "/waveform.txt");
    const auto [w, hash_w] = load_waveform(dir + "/filter.txt");
    const std::uint64_t expected = config_hash(config);
    if (hash_x != expected || hash_w != expected)
        throw std::invalid_argument(
            "evaluate: saved design was produced by a different configuration");
    if (x.size() != config.waveform.length || w.size() != config.waveform.length)
        throw std::invalid_argument("evaluate: saved design length mismatch");

    const TransferMatrix J = build_transfer_matrix(config.jammer);
    EvaluateReport report;
    report.pslr_db = pslr_db(xcorr_fft(x, w));
    report.isl = isl(x, w);
    report.il = il(J.apply(x), w);
    report.lpg_db = lpg_db(x, w);
    report.papr = papr(x);

    std::ostringstream out;
    out << "# design metrics; *_db in dB, isl/il linear power sums, papr linear\n";
    out << "metric,value\n";
    out << "pslr_db," << fmt(report.pslr_db) << '\n';
    out << "isl," << fmt(report.isl) << '\n';
    out << "il," << fmt(report.il) << '\n';
    out << "lpg_db," << fmt(report.lpg_db) << '\n';
    out << "papr," << fmt(report.papr) << '\n';
    report.csv_path = dir + "/evaluate.csv";
    write_file(report.csv_path, out.str());
    return report;
}

std::vector<std::string> run_experiment(const ScenarioConfig& config,
                                        const std::string& out_dir, unsigned threads) {
    ensure_dir(out_dir);
    switch (config.experiment) {
        case ExperimentKind::convergence:
            return {run_convergence(config, out_dir)};
        case ExperimentKind::pulse_compression:
            return {run_pulse_compression(config, out_dir)};
        case ExperimentKind::delay_doppler:
            return {run_delay_doppler(config, out_dir)};
        case ExperimentKind::ser_sweep:
            return {run_ser_sweep(config, out_dir, threads)};
        case ExperimentKind::beta_sweep:
            return {run_beta_sweep(config, out_dir, threads)};
        case ExperimentKind::epsilon_tradeoff:
            return {run_epsilon_tradeoff(config, out_dir)};
        case ExperimentKind::phase_compare:
            return {run_phase_compare(config, out_dir)};
    }
    throw std::logic_error("run_experiment: unhandled kind");
}

}  // namespace isac
