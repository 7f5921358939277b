#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperselect/algorithms.hpp"
#include "hyperselect/binary_mapping.hpp"
#include "hyperselect/data.hpp"
#include "hyperselect/opf.hpp"
#include "hyperselect/optimizer.hpp"
#include "hyperselect/parallel.hpp"
#include "hyperselect/random.hpp"
#include "hyperselect/stats.hpp"

namespace hyperselect {

/// Wrapper fitness: 1 - balanced OPF accuracy on the validation partition, with the
/// classifier trained on the training partition, both restricted to the mask.
/// A mask selecting nothing scores 1.0 without touching the classifier.
///
/// Results are memoized by mask; the cache is shared between copies and safe to use
/// from several threads.
class WrapperObjective {
public:
    WrapperObjective(Dataset train, Dataset validation, bool cache = true)
        : state_(std::make_shared<State>(std::move(train), std::move(validation), cache)) {
        if (state_->train.n_features != state_->validation.n_features) {
            throw std::invalid_argument("training and validation partitions differ in width");
        }
    }

    double evaluate(const FeatureMask& mask) const {
        if (mask.size() != n_features()) throw std::invalid_argument("mask width does not match the dataset");
        if (popcount(mask) == 0) return 1.0;
        if (state_->cache) {
            std::lock_guard lock(state_->mutex);
            if (auto it = state_->memo.find(mask); it != state_->memo.end()) return it->second;
        }
        state_->classifier_calls.fetch_add(1, std::memory_order_relaxed);
        const auto model = opf::train(state_->train, mask);
        const double fitness = 1.0 - opf::accuracy(model, state_->validation);
        if (state_->cache) {
            std::lock_guard lock(state_->mutex);
            state_->memo.emplace(mask, fitness);
        }
        return fitness;
    }

    double operator()(const FeatureMask& mask) const { return evaluate(mask); }

    /// Number of times an OPF model was trained and scored.
    std::size_t classifier_invocations() const { return state_->classifier_calls.load(); }
    std::size_t n_features() const { return state_->train.n_features; }
    const Dataset& train() const { return state_->train; }
    const Dataset& validation() const { return state_->validation; }

private:
    struct State {
        State(Dataset t, Dataset v, bool c) : train(std::move(t)), validation(std::move(v)), cache(c) {}
        Dataset train;
        Dataset validation;
        bool cache;
        std::mutex mutex;
        std::unordered_map<FeatureMask, double> memo;
        std::atomic<std::size_t> classifier_calls{0};
    };
    std::shared_ptr<State> state_;
};

/// Everything a single run needs besides the dataset, algorithm, space and seed.
struct RunConfig {
    std::size_t n_agents = 15;
    std::size_t n_iterations = 25;
    Bounds bounds{};
    double p = kDefaultNormOrder;
    AlgorithmParams params{};
    SplitSpec split{};
    bool cache = true;
    std::size_t eval_jobs = 1;
    bool check_invariants = false;
};

struct RunRecord {
    std::string dataset;
    std::string algorithm;  // algorithm token, or "baseline"
    std::size_t space_dim = 1;
    std::uint64_t seed = 0;
    double test_accuracy = 0.0;        // balanced
    double test_plain_accuracy = 0.0;
    std::size_t n_selected = 0;
    std::size_t n_features = 0;
    double wall_time = 0.0;            // seconds, optimization phase only
    double best_fitness = 0.0;
    double initial_best_fitness = 0.0;
    std::vector<double> trace;         // best fitness after each update iteration
    FeatureMask mask;

    bool valid() const { return n_selected >= 1 && n_selected <= n_features; }
    std::string technique() const {
        if (algorithm == "baseline") return "BASELINE";
        return technique_label(parse_algorithm(algorithm), space_dim);
    }
};

// Stream id for the data split, derived from the run seed.
inline constexpr std::uint64_t kSplitStream = 0x5f1175eedULL;

/// Sample indices for the run with `seed`. Seeds 2k and 2k+1 share one stratified
/// shuffled split and form a 2-fold pair over its non-test part: the odd seed swaps
/// the training and validation roles.
inline SplitIndices protocol_indices(const Dataset& ds, const SplitSpec& spec, std::uint64_t seed) {
    auto rng = RandomStream::derive(seed >> 1, kSplitStream);
    auto idx = split_indices(ds, spec, rng);
    if (seed & 1U) std::swap(idx.train, idx.validation);
    return idx;
}

/// protocol_indices() materialized and min-max scaled with training statistics.
inline Partitions protocol_partitions(const Dataset& ds, const SplitSpec& spec, std::uint64_t seed) {
    const auto idx = protocol_indices(ds, spec, seed);
    return normalize(Partitions{ds.subset(idx.train), ds.subset(idx.validation), ds.subset(idx.test)});
}

namespace detail {

inline void score_on_test(RunRecord& rec, const Partitions& parts) {
    rec.n_features = parts.train.n_features;
    rec.n_selected = popcount(rec.mask);
    const auto model = opf::train(parts.train, rec.mask);
    const auto predicted = opf::predict(model, parts.test);
    rec.test_accuracy = opf::balanced_accuracy(parts.test.labels, predicted);
    rec.test_plain_accuracy = opf::plain_accuracy(parts.test.labels, predicted);
}

}  // namespace detail

/// split -> normalize -> optimize -> retrain on the training partition with the best
/// mask -> score on the test partition.
inline RunRecord run_experiment(const Dataset& ds, AlgorithmKind algorithm, std::size_t space_dim, std::uint64_t seed,
                                const RunConfig& config, const IterationObserver& observer = {}) {
    const auto parts = protocol_partitions(ds, config.split, seed);
    WrapperObjective objective(parts.train, parts.validation, config.cache);

    SearchSpace space;
    space.n_agents = config.n_agents;
    space.n_variables = ds.n_features;
    space.n_iterations = config.n_iterations;
    space.space_dim = space_dim;
    space.bounds = config.bounds;
    space.p = config.p;

    RunOptions options;
    options.eval_jobs = config.eval_jobs;
    options.check_invariants = config.check_invariants;

    const auto start = std::chrono::steady_clock::now();
    auto result = run_algorithm(algorithm, config.params, space, objective, seed, options, observer);
    const auto stop = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.dataset = ds.name;
    rec.algorithm = std::string(to_string(algorithm));
    rec.space_dim = space_dim;
    rec.seed = seed;
    rec.wall_time = std::chrono::duration<double>(stop - start).count();
    rec.best_fitness = result.best.fitness;
    rec.trace = std::move(result.trace);
    rec.mask = std::move(result.best.mask);
    rec.initial_best_fitness = result.initial_best_fitness;
    detail::score_on_test(rec, parts);
    return rec;
}

/// OPF on every feature over the same split, without optimization.
inline RunRecord run_baseline(const Dataset& ds, std::uint64_t seed, const RunConfig& config) {
    const auto parts = protocol_partitions(ds, config.split, seed);
    RunRecord rec;
    rec.dataset = ds.name;
    rec.algorithm = "baseline";
    rec.space_dim = 1;
    rec.seed = seed;
    rec.mask.assign(ds.n_features, true);
    detail::score_on_test(rec, parts);
    return rec;
}

struct Technique {
    AlgorithmKind algorithm;
    std::size_t space_dim;
};

struct TechniqueSummary {
    std::string dataset;
    std::string algorithm;
    std::size_t space_dim = 1;
    std::string label;
    std::size_t runs = 0;
    double mean_accuracy = 0.0;
    double mean_plain_accuracy = 0.0;
    double mean_features = 0.0;
    double mean_time = 0.0;
};

struct BatchResult {
    std::vector<Technique> techniques;
    std::vector<std::vector<RunRecord>> records;  // [technique][run]

    std::size_t total_records() const {
        std::size_t n = 0;
        for (const auto& r : records) n += r.size();
        return n;
    }
};

inline TechniqueSummary summarize(const std::vector<RunRecord>& runs) {
    TechniqueSummary s;
    if (runs.empty()) return s;
    s.dataset = runs.front().dataset;
    s.algorithm = runs.front().algorithm;
    s.space_dim = runs.front().space_dim;
    s.label = runs.front().technique();
    s.runs = runs.size();
    std::vector<double> acc, plain, feats, time;
    for (const auto& r : runs) {
        acc.push_back(r.test_accuracy);
        plain.push_back(r.test_plain_accuracy);
        feats.push_back(static_cast<double>(r.n_selected));
        time.push_back(r.wall_time);
    }
    s.mean_accuracy = stats::mean(acc);
    s.mean_plain_accuracy = stats::mean(plain);
    s.mean_features = stats::mean(feats);
    s.mean_time = stats::mean(time);
    return s;
}

/// Runs every technique `n_runs` times with seeds base_seed + run index, spreading
/// the (technique, run) pairs over `jobs` threads. Records do not depend on `jobs`
/// apart from wall time.
inline BatchResult run_batch(const Dataset& ds, const std::vector<Technique>& techniques, std::size_t n_runs,
                             std::uint64_t base_seed, const RunConfig& config, std::size_t jobs = 1) {
    BatchResult out;
    out.techniques = techniques;
    out.records.assign(techniques.size(), std::vector<RunRecord>(n_runs));
    parallel_for(techniques.size() * n_runs, jobs, [&](std::size_t k) {
        const std::size_t t = k / n_runs;
        const std::size_t run = k % n_runs;
        out.records[t][run] = run_experiment(ds, techniques[t].algorithm, techniques[t].space_dim, base_seed + run, config);
    });
    return out;
}

}  // namespace hyperselect
