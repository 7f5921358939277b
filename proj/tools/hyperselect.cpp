#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using hyperselect::ExperimentConfig;

// Command-line values; unset ones leave the configuration file (or defaults) alone.
struct Overrides {
    std::optional<std::string> config_path;
    std::vector<std::string> datasets;
    std::vector<std::string> algorithms;
    std::vector<std::string> spaces;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> agents;
    std::optional<std::size_t> iterations;
    std::optional<std::uint64_t> seed;
    std::optional<double> p_norm;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<std::size_t> jobs;
    std::optional<std::string> out;

    ExperimentConfig resolve() const {
        ExperimentConfig c = config_path ? hyperselect::load_config(*config_path) : ExperimentConfig{};
        if (!datasets.empty()) c.datasets = datasets;
        if (!algorithms.empty()) c.algorithms = algorithms;
        if (!spaces.empty()) c.spaces = spaces;
        if (runs) c.runs = *runs;
        if (agents) c.agents = *agents;
        if (iterations) c.iterations = *iterations;
        if (seed) c.seed = *seed;
        if (p_norm) c.p_norm = *p_norm;
        if (lower) c.lower = *lower;
        if (upper) c.upper = *upper;
        if (jobs) c.jobs = *jobs;
        if (out) c.out = *out;
        return c;
    }
};

void add_common(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_path, "JSON configuration file")->envname("HYPERSELECT_CONFIG");
    cmd.add_option("--dataset", o.datasets, "dataset file(s), sparse text or .csv")
        ->envname("HYPERSELECT_DATASET")
        ->delimiter(',');
    cmd.add_option("--runs", o.runs, "runs per technique")->envname("HYPERSELECT_RUNS");
    cmd.add_option("--seed", o.seed, "base seed; run i uses seed + i")->envname("HYPERSELECT_SEED");
    cmd.add_option("--out", o.out, "output directory")->envname("HYPERSELECT_OUT");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypercomplex metaheuristic feature selection with an OPF wrapper"};
    app.require_subcommand(1);

    Overrides run_o;
    auto* run = app.add_subcommand("run", "optimize feature masks and write summary, runs, wide tables and traces");
    add_common(*run, run_o);
    run->add_option("--algo", run_o.algorithms, "abc|aiwpso|ba|cs|fa|fpa|pso")
        ->envname("HYPERSELECT_ALGO")
        ->delimiter(',');
    run->add_option("--space", run_o.spaces, "std|quat|oct")->envname("HYPERSELECT_SPACE")->delimiter(',');
    run->add_option("--agents", run_o.agents, "population size")->envname("HYPERSELECT_AGENTS");
    run->add_option("--iters", run_o.iterations, "update iterations")->envname("HYPERSELECT_ITERS");
    run->add_option("--p-norm", run_o.p_norm, "Minkowski norm order")->envname("HYPERSELECT_P_NORM");
    run->add_option("--lower", run_o.lower, "lower search bound")->envname("HYPERSELECT_LOWER");
    run->add_option("--upper", run_o.upper, "upper search bound")->envname("HYPERSELECT_UPPER");
    run->add_option("--jobs", run_o.jobs, "parallel runs")->envname("HYPERSELECT_JOBS");

    Overrides base_o;
    auto* baseline = app.add_subcommand("baseline", "OPF on all features over the same splits");
    add_common(*baseline, base_o);

    std::string stats_input;
    std::optional<std::string> stats_out;
    bool minimize = false;
    auto* stats = app.add_subcommand("stats", "mark the best technique of a wide CSV and those tied with it");
    stats->add_option("input", stats_input, "wide CSV (one column per technique)")->required();
    stats->add_option("--out", stats_out, "write the marked table here instead of stdout");
    stats->add_flag("--minimize", minimize, "lower values are better (features, time)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto config = run_o.resolve();
            hyperselect::cli::cmd_run(config, std::cerr);
        } else if (*baseline) {
            auto config = base_o.resolve();
            if (!base_o.runs && !base_o.config_path) config.runs = 1;
            if (base_o.out) {
                std::filesystem::create_directories(config.out);
                auto out = hyperselect::cli::open_output(std::filesystem::path(config.out) / "baseline.csv");
                hyperselect::cli::cmd_baseline(config, out);
            } else {
                hyperselect::cli::cmd_baseline(config, std::cout);
            }
        } else if (*stats) {
            std::ifstream in(stats_input);
            if (!in) throw std::runtime_error("cannot open " + stats_input);
            if (stats_out) {
                auto out = hyperselect::cli::open_output(*stats_out);
                hyperselect::cli::cmd_stats(in, out, minimize);
            } else {
                hyperselect::cli::cmd_stats(in, std::cout, minimize);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
