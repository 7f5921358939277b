#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "hyperselect/hyperselect.hpp"

namespace hyperselect::cli {

namespace fs = std::filesystem;

inline std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

struct RunArtifacts {
    std::vector<TechniqueSummary> summaries;
    std::vector<BatchResult> batches;  // one per dataset
};

/// Runs the configured batch and writes the artifacts under config.out:
/// summary.csv, runs.jsonl, <dataset>_<metric>.csv and traces/.
/// Datasets are loaded before anything is written.
inline RunArtifacts cmd_run(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    std::vector<Dataset> datasets;
    for (const auto& path : config.datasets) {
        if (!fs::exists(path)) throw std::runtime_error("dataset not found: " + path);
        datasets.push_back(load_dataset(path));
    }
    const auto techniques = config.techniques();
    const auto run_config = config.run_config();
    const nlohmann::json config_json = config;

    RunArtifacts artifacts;
    for (const auto& ds : datasets) {
        log << "dataset " << ds.name << ": " << ds.size() << " samples, " << ds.n_features << " features, "
            << techniques.size() << " techniques x " << config.runs << " runs\n";
        artifacts.batches.push_back(run_batch(ds, techniques, config.runs, config.seed, run_config, config.jobs));
        for (const auto& runs : artifacts.batches.back().records) artifacts.summaries.push_back(summarize(runs));
    }

    const fs::path out_dir(config.out);
    fs::create_directories(out_dir / "traces");
    {
        auto out = open_output(out_dir / "summary.csv");
        write_summary(out, artifacts.summaries, config_json);
    }
    {
        auto out = open_output(out_dir / "runs.jsonl");
        out << nlohmann::json{{"type", "config"}, {"config", config_json}}.dump() << '\n';
        for (const auto& batch : artifacts.batches) {
            for (const auto& runs : batch.records) {
                for (const auto& rec : runs) {
                    auto j = record_to_json(rec);
                    j["type"] = "run";
                    out << j.dump() << '\n';
                }
            }
        }
    }
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        const auto& batch = artifacts.batches[d];
        for (Metric m : {Metric::accuracy, Metric::plain_accuracy, Metric::features, Metric::time}) {
            auto out = open_output(out_dir / (datasets[d].name + "_" + std::string(metric_name(m)) + ".csv"));
            write_wide(out, batch, m, config_json);
        }
        for (const auto& runs : batch.records) {
            for (const auto& rec : runs) {
                auto out = open_output(out_dir / "traces" / trace_filename(rec));
                write_trace(out, rec, config_json);
            }
        }
    }
    for (const auto& s : artifacts.summaries) {
        log << "  " << s.label << ": acc " << fixed(s.mean_accuracy, 4) << ", features " << fixed(s.mean_features, 2)
            << ", time " << fixed(s.mean_time, 3) << "s\n";
    }
    log << "artifacts written to " << out_dir.string() << '\n';
    return artifacts;
}

/// Marks the best technique of a wide CSV and those statistically tied with it.
inline void cmd_stats(std::istream& in, std::ostream& out, bool minimize) {
    const auto table = read_wide(in);
    for (const auto& t : table) {
        if (t.values.size() != table.front().values.size()) throw std::runtime_error("ragged CSV");
    }
    write_marking(out, table, stats::mark_best(table, minimize));
}

struct BaselineReport {
    std::vector<RunRecord> records;
    double mean_accuracy = 0.0;
    double mean_plain_accuracy = 0.0;
};

/// OPF on all features for seeds seed .. seed + runs - 1.
inline BaselineReport cmd_baseline(const ExperimentConfig& config, std::ostream& out) {
    if (config.datasets.empty()) throw std::invalid_argument("no dataset given");
    if (config.runs == 0) throw std::invalid_argument("runs must be at least 1");
    const auto run_config = config.run_config();
    const nlohmann::json config_json = config;
    BaselineReport report;
    write_csv_header(out, "baseline", config_json);
    out << "dataset,seed,accuracy,plain_accuracy,n_selected,n_features\n";
    for (const auto& path : config.datasets) {
        if (!fs::exists(path)) throw std::runtime_error("dataset not found: " + path);
        const auto ds = load_dataset(path);
        std::vector<double> acc, plain;
        for (std::size_t r = 0; r < config.runs; ++r) {
            auto rec = run_baseline(ds, config.seed + r, run_config);
            out << csv_field(rec.dataset) << ',' << rec.seed << ',' << fixed(rec.test_accuracy, kValueDecimals) << ','
                << fixed(rec.test_plain_accuracy, kValueDecimals) << ',' << rec.n_selected << ',' << rec.n_features
                << '\n';
            acc.push_back(rec.test_accuracy);
            plain.push_back(rec.test_plain_accuracy);
            report.records.push_back(std::move(rec));
        }
        out << csv_field(ds.name) << ",mean," << fixed(stats::mean(acc), kValueDecimals) << ','
            << fixed(stats::mean(plain), kValueDecimals) << ',' << ds.n_features << ',' << ds.n_features << '\n';
    }
    std::vector<double> acc, plain;
    for (const auto& r : report.records) {
        acc.push_back(r.test_accuracy);
        plain.push_back(r.test_plain_accuracy);
    }
    report.mean_accuracy = stats::mean(acc);
    report.mean_plain_accuracy = stats::mean(plain);
    return report;
}

}  // namespace hyperselect::cli
