#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperselect/binary_mapping.hpp"
#include "hyperselect/hypercomplex.hpp"
#include "hyperselect/parallel.hpp"
#include "hyperselect/random.hpp"

namespace hyperselect {

/// Problem and loop geometry shared by every algorithm.
struct SearchSpace {
    std::size_t n_agents = 15;
    std::size_t n_variables = 1;
    std::size_t n_iterations = 25;  // update iterations after the initial evaluation
    std::size_t space_dim = 1;
    Bounds bounds{};
    double p = kDefaultNormOrder;

    void validate() const {
        if (n_agents < 1) throw std::invalid_argument("search space needs at least one agent");
        if (n_variables < 1) throw std::invalid_argument("search space needs at least one variable");
        if (n_iterations < 1) throw std::invalid_argument("search space needs at least one iteration");
        if (!valid_space_dim(space_dim)) throw std::invalid_argument("space dimension must be 1, 2, 4 or 8");
        if (!(p >= 1.0)) throw std::invalid_argument("norm order p must be >= 1");
        bounds.validate();
    }
};

/// Maps a feature mask to a value to minimize. Must be reentrant when
/// evaluations run on several threads.
using Objective = std::function<double(const FeatureMask&)>;

/// Scores a position directly, e.g. a continuous benchmark over decode(position).
/// The mask is still drawn so the random streams advance exactly as with Objective.
using PositionObjective = std::function<double(const Position&)>;

struct Agent {
    Position position;
    double fitness = std::numeric_limits<double>::infinity();
    FeatureMask mask;  // mask drawn at the most recent evaluation of `position`
};

struct BestSolution {
    Position position;
    double fitness = std::numeric_limits<double>::infinity();
    FeatureMask mask;
};

struct Evaluation {
    double fitness = std::numeric_limits<double>::infinity();
    FeatureMask mask;
};

struct RunOptions {
    /// Threads used for batched objective evaluations. Results do not depend on it.
    std::size_t eval_jobs = 1;
    /// Verify the coefficient domain and elitism after every iteration.
    bool check_invariants = false;
};

struct RunResult {
    BestSolution best;
    std::vector<double> trace;  // best fitness after each update iteration
    double initial_best_fitness = 0.0;
    std::size_t initial_evaluations = 0;
    std::vector<std::size_t> evaluations_per_iteration;
    std::vector<std::uint64_t> coefficient_updates_per_iteration;

    std::size_t total_evaluations() const {
        std::size_t n = initial_evaluations;
        for (auto e : evaluations_per_iteration) n += e;
        return n;
    }
};

class Search;

/// Observer invoked after initialization (iteration 0) and after each update iteration.
using IterationObserver = std::function<void(std::size_t iteration, const Search&)>;

/// Mutable state of one optimization run: the population, the elitist best, the
/// random streams and the evaluation bookkeeping.
///
/// Randomness used by the update rules comes from `rng()`. Every agent slot owns a
/// separate stream used only for binarizing positions evaluated on its behalf, so
/// evaluating a batch concurrently draws the same thresholds as evaluating it in order.
class Search {
public:
    // Stream ids derived from the master seed.
    static constexpr std::uint64_t kUpdateStream = 0;
    static constexpr std::uint64_t kFirstAgentStream = 1;

    Search(SearchSpace space, Objective objective, std::uint64_t seed, RunOptions options = {})
        : Search(std::move(space), wrap(std::move(objective)), seed, options) {}

    Search(SearchSpace space, PositionObjective objective, std::uint64_t seed, RunOptions options = {})
        : Search(std::move(space), wrap(std::move(objective)), seed, options) {}

private:
    using Scorer = std::function<double(const FeatureMask&, const Position&)>;

    static Scorer wrap(Objective f) {
        if (!f) throw std::invalid_argument("objective is empty");
        return [f = std::move(f)](const FeatureMask& mask, const Position&) { return f(mask); };
    }
    static Scorer wrap(PositionObjective f) {
        if (!f) throw std::invalid_argument("objective is empty");
        return [f = std::move(f)](const FeatureMask&, const Position& pos) { return f(pos); };
    }

    Search(SearchSpace space, Scorer scorer, std::uint64_t seed, RunOptions options)
        : space_(std::move(space)),
          objective_(std::move(scorer)),
          options_(options),
          rng_(RandomStream::derive(seed, kUpdateStream)) {
        space_.validate();
        agent_rngs_.reserve(space_.n_agents);
        for (std::size_t i = 0; i < space_.n_agents; ++i) {
            agent_rngs_.push_back(RandomStream::derive(seed, kFirstAgentStream + i));
        }
    }

public:
    const SearchSpace& space() const { return space_; }
    std::size_t size() const { return agents_.size(); }

    std::vector<Agent>& agents() { return agents_; }
    const std::vector<Agent>& agents() const { return agents_; }

    const BestSolution& best() const { return best_; }

    RandomStream& rng() { return rng_; }

    /// A fresh random position drawn from the update stream.
    Position random_position() {
        Position pos;
        pos.reserve(space_.n_variables);
        for (std::size_t j = 0; j < space_.n_variables; ++j) pos.push_back(rand_init(rng_, space_.space_dim));
        updates_ += space_.n_variables * space_.space_dim;
        return pos;
    }

    /// Draws every agent with rand_init and evaluates the whole population once.
    void initialize_population() {
        agents_.assign(space_.n_agents, Agent{});
        for (auto& a : agents_) a.position = random_position();
        std::vector<std::size_t> all(agents_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::vector<const Position*> positions;
        for (auto& a : agents_) positions.push_back(&a.position);
        auto evals = evaluate_batch(all, positions);
        for (std::size_t i = 0; i < agents_.size(); ++i) {
            agents_[i].fitness = evals[i].fitness;
            agents_[i].mask = std::move(evals[i].mask);
        }
    }

    /// Clamps a whole position into the coefficient domain and records the work.
    void commit(Position& pos) {
        for (auto& q : pos) q = clamp(q);
        updates_ += pos.size() * space_.space_dim;
    }

    /// Clamps a single decision variable after an in-place update.
    void commit(Hypercomplex& q) {
        q = clamp(q);
        updates_ += q.dim();
    }

    /// Binarizes `pos` with the stream of agent slot `slot`, scores the mask and
    /// folds the result into the elitist best.
    Evaluation evaluate(std::size_t slot, const Position& pos) {
        Evaluation e = score(slot, pos);
        absorb(pos, e);
        return e;
    }

    /// Evaluates several positions. Mask draws and objective calls may run
    /// concurrently; the best solution is updated afterwards in slot order, so the
    /// outcome is identical to calling evaluate() for each entry in sequence.
    std::vector<Evaluation> evaluate_batch(std::span<const std::size_t> slots, std::span<const Position* const> positions) {
        if (slots.size() != positions.size()) throw std::invalid_argument("evaluate_batch: size mismatch");
        for (std::size_t k = 0; k < slots.size(); ++k) {
            for (std::size_t l = 0; l < k; ++l) {
                if (slots[l] == slots[k]) throw std::invalid_argument("evaluate_batch: duplicate agent slot");
            }
        }
        std::vector<Evaluation> out(slots.size());
        parallel_for(slots.size(), options_.eval_jobs, [&](std::size_t k) { out[k] = score(slots[k], *positions[k]); });
        for (std::size_t k = 0; k < slots.size(); ++k) absorb(*positions[k], out[k]);
        return out;
    }

    std::size_t evaluations() const { return evaluations_; }
    std::uint64_t coefficient_updates() const { return updates_; }

private:
    Evaluation score(std::size_t slot, const Position& pos) {
        if (slot >= agent_rngs_.size()) throw std::out_of_range("agent slot out of range");
        Evaluation e;
        e.mask = mask_from_position(pos, space_.p, space_.bounds, agent_rngs_[slot]);
        e.fitness = objective_(e.mask, pos);
        if (std::isnan(e.fitness)) throw std::runtime_error("objective returned NaN");
        return e;
    }

    void absorb(const Position& pos, const Evaluation& e) {
        ++evaluations_;
        if (e.fitness < best_.fitness) {
            best_.position = pos;
            best_.fitness = e.fitness;
            best_.mask = e.mask;
        }
    }

    SearchSpace space_;
    Scorer objective_;
    RunOptions options_;
    RandomStream rng_;
    std::vector<RandomStream> agent_rngs_;
    std::vector<Agent> agents_;
    BestSolution best_;
    std::size_t evaluations_ = 0;
    std::uint64_t updates_ = 0;
};

template <class A>
concept Metaheuristic = requires(A a, Search& s) {
    a.initialize(s);
    a.step(s);
};

namespace detail {

inline void check_iteration_invariants(const Search& s, const std::vector<double>& trace) {
    for (const auto& a : s.agents()) {
        if (a.position.size() != s.space().n_variables) throw std::logic_error("agent position lost variables");
        for (const auto& q : a.position) {
            if (!in_domain(q)) throw std::logic_error("agent coefficient left the [0,1] domain");
        }
    }
    if (trace.size() >= 2 && trace.back() > trace[trace.size() - 2]) {
        throw std::logic_error("best fitness trace increased");
    }
}

}  // namespace detail

namespace detail {

template <Metaheuristic Algorithm>
RunResult drive(Search& search, Algorithm& algorithm, const RunOptions& options, const IterationObserver& observer) {
    const auto& space = search.space();
    search.initialize_population();
    algorithm.initialize(search);

    RunResult result;
    result.initial_evaluations = search.evaluations();
    result.initial_best_fitness = search.best().fitness;
    result.trace.reserve(space.n_iterations);
    if (observer) observer(0, search);

    for (std::size_t t = 0; t < space.n_iterations; ++t) {
        const std::size_t evals_before = search.evaluations();
        const std::uint64_t updates_before = search.coefficient_updates();
        algorithm.step(search);
        result.evaluations_per_iteration.push_back(search.evaluations() - evals_before);
        result.coefficient_updates_per_iteration.push_back(search.coefficient_updates() - updates_before);
        result.trace.push_back(search.best().fitness);
        if (options.check_invariants) check_iteration_invariants(search, result.trace);
        if (observer) observer(t + 1, search);
    }
    result.best = search.best();
    return result;
}

}  // namespace detail

/// Initializes a population, then applies `algorithm.step` for the configured number
/// of iterations, recording the elitist best fitness after each one.
template <Metaheuristic Algorithm>
RunResult run(const SearchSpace& space, Algorithm algorithm, const Objective& objective, std::uint64_t seed,
              const RunOptions& options = {}, const IterationObserver& observer = {}) {
    Search search(space, objective, seed, options);
    return detail::drive(search, algorithm, options, observer);
}

/// Same loop with an objective over positions instead of masks.
template <Metaheuristic Algorithm>
RunResult run_positions(const SearchSpace& space, Algorithm algorithm, const PositionObjective& objective,
                        std::uint64_t seed, const RunOptions& options = {}, const IterationObserver& observer = {}) {
    Search search(space, objective, seed, options);
    return detail::drive(search, algorithm, options, observer);
}

}  // namespace hyperselect
