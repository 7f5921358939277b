#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperselect/algorithms.hpp"
#include "hyperselect/selection.hpp"

namespace hyperselect {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(AbcParams, trials_limit)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PsoParams, c1, c2, w)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(AiwpsoParams, c1, c2, w_min, w_max)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(BaParams, f_min, f_max, loudness, pulse_rate, local_walk)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CsParams, beta, p_discard, step)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FaParams, alpha, beta0, gamma)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FpaParams, beta, p_local)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(AlgorithmParams, abc, aiwpso, ba, cs, fa, fpa, pso)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SplitSpec, train_fraction, validation_fraction, test_fraction,
                                                stratified)

inline constexpr int kCsvSchemaVersion = 1;

/// Resolved batch configuration.
struct ExperimentConfig {
    std::vector<std::string> datasets;
    std::vector<std::string> algorithms{"pso"};
    std::vector<std::string> spaces{"std"};
    std::size_t runs = 25;
    std::size_t agents = 15;
    std::size_t iterations = 25;
    double lower = -20.0;
    double upper = 20.0;
    double p_norm = kDefaultNormOrder;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::string out = "results";
    bool cache = true;
    AlgorithmParams params{};
    SplitSpec split{};

    std::vector<Technique> techniques() const {
        std::vector<Technique> out_;
        for (const auto& a : algorithms) {
            for (const auto& s : spaces) out_.push_back({parse_algorithm(a), parse_space(s)});
        }
        return out_;
    }

    RunConfig run_config() const {
        RunConfig rc;
        rc.n_agents = agents;
        rc.n_iterations = iterations;
        rc.bounds = {lower, upper};
        rc.p = p_norm;
        rc.params = params;
        rc.split = split;
        rc.cache = cache;
        return rc;
    }

    void validate() const {
        if (datasets.empty()) throw std::invalid_argument("no dataset given");
        if (algorithms.empty()) throw std::invalid_argument("no algorithm given");
        if (spaces.empty()) throw std::invalid_argument("no search space given");
        if (runs == 0) throw std::invalid_argument("runs must be at least 1");
        if (jobs == 0) throw std::invalid_argument("jobs must be at least 1");
        (void)techniques();
        SearchSpace probe;
        probe.n_agents = agents;
        probe.n_iterations = iterations;
        probe.bounds = {lower, upper};
        probe.p = p_norm;
        probe.validate();
        params.validate();
        split.validate();
    }
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig, datasets, algorithms, spaces, runs, agents,
                                                iterations, lower, upper, p_norm, seed, jobs, out, cache, params,
                                                split)

/// Reads a JSON configuration. Missing keys keep their defaults; unknown top-level
/// keys are rejected so typos do not pass silently.
inline ExperimentConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("configuration must be a JSON object");
    const nlohmann::json defaults = ExperimentConfig{};
    for (const auto& [key, _] : doc.items()) {
        if (!defaults.contains(key)) throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
    return doc.get<ExperimentConfig>();
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open configuration file " + path.string());
    try {
        return parse_config(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("invalid configuration file " + path.string() + ": " + e.what());
    }
}

inline nlohmann::json record_to_json(const RunRecord& r) {
    std::string bits;
    bits.reserve(r.mask.size());
    for (bool b : r.mask) bits.push_back(b ? '1' : '0');
    return {{"dataset", r.dataset},
            {"algorithm", r.algorithm},
            {"space", r.algorithm == "baseline" ? "std" : std::string(space_token(r.space_dim))},
            {"space_dim", r.space_dim},
            {"technique", r.technique()},
            {"seed", r.seed},
            {"test_accuracy", r.test_accuracy},
            {"test_plain_accuracy", r.test_plain_accuracy},
            {"n_selected", r.n_selected},
            {"n_features", r.n_features},
            {"best_fitness", r.best_fitness},
            {"initial_best_fitness", r.initial_best_fitness},
            {"wall_time", r.wall_time},
            {"mask", bits},
            {"trace", r.trace}};
}

/// Comment lines heading every CSV artifact: schema name/version, then the resolved
/// configuration as compact JSON.
inline void write_csv_header(std::ostream& out, std::string_view schema, const nlohmann::json& config) {
    out << "# schema: " << schema << " v" << kCsvSchemaVersion << '\n';
    out << "# config: " << config.dump() << '\n';
}

inline std::string fixed(double v, int decimals) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(decimals) << v;
    return s.str();
}

inline constexpr int kValueDecimals = 17;
inline constexpr int kTimeDecimals = 6;

inline std::string csv_field(std::string_view v) {
    if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
    std::string q = "\"";
    for (char c : v) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

inline void write_summary(std::ostream& out, const std::vector<TechniqueSummary>& rows, const nlohmann::json& config) {
    write_csv_header(out, "summary", config);
    out << "dataset,algorithm,space,technique,runs,mean_acc,mean_plain_acc,mean_feats,mean_time\n";
    for (const auto& s : rows) {
        out << csv_field(s.dataset) << ',' << s.algorithm << ',' << space_token(s.space_dim) << ',' << s.label << ','
            << s.runs << ',' << fixed(s.mean_accuracy, kValueDecimals) << ','
            << fixed(s.mean_plain_accuracy, kValueDecimals) << ',' << fixed(s.mean_features, kValueDecimals) << ','
            << fixed(s.mean_time, kTimeDecimals) << '\n';
    }
}

enum class Metric { accuracy, plain_accuracy, features, time };

inline std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::accuracy: return "accuracy";
        case Metric::plain_accuracy: return "plain_accuracy";
        case Metric::features: return "features";
        case Metric::time: return "time";
    }
    return "?";
}

/// One column per technique, one row per run; input format of the stats command.
inline void write_wide(std::ostream& out, const BatchResult& batch, Metric metric, const nlohmann::json& config) {
    write_csv_header(out, std::string("wide_") + std::string(metric_name(metric)), config);
    out << "run";
    for (const auto& runs : batch.records) out << ',' << (runs.empty() ? std::string("?") : runs.front().technique());
    out << '\n';
    const std::size_t n_runs = batch.records.empty() ? 0 : batch.records.front().size();
    for (std::size_t r = 0; r < n_runs; ++r) {
        out << r;
        for (const auto& runs : batch.records) {
            const auto& rec = runs[r];
            out << ',';
            switch (metric) {
                case Metric::accuracy: out << fixed(rec.test_accuracy, kValueDecimals); break;
                case Metric::plain_accuracy: out << fixed(rec.test_plain_accuracy, kValueDecimals); break;
                case Metric::features: out << rec.n_selected; break;
                case Metric::time: out << fixed(rec.wall_time, kTimeDecimals); break;
            }
        }
        out << '\n';
    }
}

/// Convergence trace: iteration 0 is the best fitness after initialization.
inline void write_trace(std::ostream& out, const RunRecord& rec, const nlohmann::json& config) {
    write_csv_header(out, "trace", config);
    out << "# run: " << nlohmann::json{{"dataset", rec.dataset}, {"technique", rec.technique()}, {"seed", rec.seed}}.dump()
        << '\n';
    out << "iteration,best_fitness\n";
    out << 0 << ',' << fixed(rec.initial_best_fitness, kValueDecimals) << '\n';
    for (std::size_t t = 0; t < rec.trace.size(); ++t) out << t + 1 << ',' << fixed(rec.trace[t], kValueDecimals) << '\n';
}

inline std::string trace_filename(const RunRecord& rec) {
    return rec.dataset + "_" + rec.algorithm + "_" + std::string(space_token(rec.space_dim)) + "_seed" +
           std::to_string(rec.seed) + ".csv";
}

/// Parsed wide CSV: technique names and per-technique samples paired by row.
inline std::vector<stats::TechniqueSamples> read_wide(std::istream& in) {
    std::string line;
    std::vector<std::string> header;
    std::vector<stats::TechniqueSamples> table;
    bool skip_first = false;
    std::size_t line_no = 0;
    auto split_line = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const char c = s[i];
            if (quoted) {
                if (c == '"' && i + 1 < s.size() && s[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cell += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else if (c != '\r') {
                cell += c;
            }
        }
        cells.push_back(cell);
        return cells;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        auto cells = split_line(line);
        if (header.empty()) {
            header = cells;
            skip_first = !header.empty() && header.front() == "run";
            for (std::size_t c = skip_first ? 1 : 0; c < header.size(); ++c) table.push_back({header[c], {}});
            if (table.empty()) throw std::runtime_error("CSV header names no technique");
            continue;
        }
        if (cells.size() != header.size()) {
            throw std::runtime_error("CSV line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                     " fields, header has " + std::to_string(header.size()));
        }
        for (std::size_t c = skip_first ? 1 : 0; c < cells.size(); ++c) {
            double v = 0.0;
            if (!detail::parse_double(detail::trim(cells[c]), v)) {
                throw std::runtime_error("CSV line " + std::to_string(line_no) + ": '" + cells[c] + "' is not a number");
            }
            table[c - (skip_first ? 1 : 0)].values.push_back(v);
        }
    }
    if (table.empty()) throw std::runtime_error("CSV is empty");
    if (table.front().values.empty()) throw std::runtime_error("CSV has no data rows");
    return table;
}

inline void write_marking(std::ostream& out, const std::vector<stats::TechniqueSamples>& table,
                          const stats::BestMarking& marking) {
    out << "# schema: marked v" << kCsvSchemaVersion << '\n';
    out << "technique,mean,p_value,bold\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << csv_field(table[i].name) << ',' << fixed(stats::mean(table[i].values), kValueDecimals) << ','
            << fixed(marking.p_values[i], kValueDecimals) << ',' << (marking.bold[i] ? 1 : 0) << '\n';
    }
}

}  // namespace hyperselect
