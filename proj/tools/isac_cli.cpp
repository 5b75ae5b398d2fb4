// Command-line workbench: design runs, saved-design evaluation, and the
// CSV-emitting experiment suite.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isac/config.hpp"
#include "isac/experiments.hpp"
#include "isac/solver.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    CLI::Option* seed_option = nullptr;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_threads) {
    cmd->add_option("config", args.config_path, "configuration file (key = value)");
    cmd->add_option("--preset", args.preset, "base preset name (see `presets`)");
    cmd->add_option("--out-dir", args.out_dir, "output directory");
    cmd->add_option("--override", args.overrides,
                    "key=value override, repeatable")
        ->type_name("KEY=VALUE");
    args.seed_option = cmd->add_option("--seed", args.seed, "master RNG seed");
    if (with_threads)
        cmd->add_option("--threads", args.threads, "Monte-Carlo worker threads")
            ->check(CLI::PositiveNumber);
}

isac::ScenarioConfig resolve_config(const CommonArgs& args) {
    isac::KeyValueMap kv;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in)
            throw std::invalid_argument("config: cannot open file: " + args.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        kv = isac::parse_key_values(buffer.str());
    }
    if (!args.preset.empty()) kv["preset"] = args.preset;
    if (args.seed_option != nullptr && args.seed_option->count() > 0)
        kv["seed"] = std::to_string(args.seed);
    for (const auto& ov : args.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("config: --override expects key=value, got '" +
                                        ov + "'");
        kv[ov.substr(0, eq)] = ov.substr(eq + 1);
    }
    return isac::config_from_map(kv);
}

std::string pick_out_dir(const CommonArgs& args, const isac::ScenarioConfig& config,
                         const std::string& fallback) {
    if (!args.out_dir.empty()) return args.out_dir;
    if (!config.output.empty()) return config.output;
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint waveform/mismatched-filter design workbench"};
    app.require_subcommand(1);

    CommonArgs design_args, eval_args, exp_args;
    CLI::App* design = app.add_subcommand("design", "run the solver, save the design");
    add_common(design, design_args, false);
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "metrics for a saved design");
    add_common(evaluate, eval_args, false);
    CLI::App* experiment =
        app.add_subcommand("experiment", "run the configured experiment, emit CSV");
    add_common(experiment, exp_args, true);
    CLI::App* presets = app.add_subcommand("presets", "list built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (presets->parsed()) {
            for (const auto& name : isac::preset_names()) std::cout << name << '\n';
            return 0;
        }

        if (design->parsed()) {
            const auto config = resolve_config(design_args);
            const std::string dir = pick_out_dir(design_args, config, "design-out");
            const auto artifacts = isac::run_design(config, dir);
            const auto& trace = artifacts.result.trace;
            std::cout << "iterations: " << trace.size() << '\n'
                      << "converged: " << (artifacts.result.converged ? "yes" : "no")
                      << '\n'
                      << "final gap: " << trace.back().eps_gap << '\n'
                      << "wrote: " << artifacts.waveform_path << ", "
                      << artifacts.filter_path << ", " << artifacts.trace_path << '\n';
            return 0;
        }

        if (evaluate->parsed()) {
            const auto config = resolve_config(eval_args);
            const std::string dir = pick_out_dir(eval_args, config, "design-out");
            const auto report = isac::run_evaluate(config, dir);
            std::cout << "pslr_db: " << report.pslr_db << '\n'
                      << "isl: " << report.isl << '\n'
                      << "il: " << report.il << '\n'
                      << "lpg_db: " << report.lpg_db << '\n'
                      << "papr: " << report.papr << '\n'
                      << "wrote: " << report.csv_path << '\n';
            return 0;
        }

        const auto config = resolve_config(exp_args);
        const std::string dir = pick_out_dir(exp_args, config, "experiment-out");
        const auto files = isac::run_experiment(config, dir, exp_args.threads);
        for (const auto& f : files) std::cout << "wrote: " << f << '\n';
        return 0;
    } catch (const isac::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
}
