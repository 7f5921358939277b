#pragma once

#include <cstddef>
#include <vector>

#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

namespace detail {

/// Velocities and personal bests shared by the PSO family.
class SwarmMemory {
public:
    void reset(const Search& s) {
        velocity_.assign(s.size(), zero_position(s.space()));
        pbest_.clear();
        pbest_fitness_.clear();
        for (const auto& a : s.agents()) {
            pbest_.push_back(a.position);
            pbest_fitness_.push_back(a.fitness);
        }
    }

    /// One synchronous swarm move: every particle is updated against the global best
    /// of the previous iteration, then the whole swarm is evaluated as one batch.
    /// Returns how many particles improved their personal best.
    std::size_t advance(Search& s, double w, double c1, double c2) {
        const Position gbest = s.best().position;
        auto& agents = s.agents();
        auto& rng = s.rng();
        for (std::size_t i = 0; i < agents.size(); ++i) {
            Position& x = agents[i].position;
            Position& v = velocity_[i];
            const Position& pb = pbest_[i];
            for (std::size_t j = 0; j < x.size(); ++j) {
                for (std::size_t d = 0; d < x[j].dim(); ++d) {
                    const double r1 = rng.uniform();
                    const double r2 = rng.uniform();
                    v[j][d] = w * v[j][d] + c1 * r1 * (pb[j][d] - x[j][d]) + c2 * r2 * (gbest[j][d] - x[j][d]);
                    x[j][d] += v[j][d];
                }
            }
            s.commit(x);
        }

        std::vector<std::size_t> slots(agents.size());
        std::vector<const Position*> positions(agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) {
            slots[i] = i;
            positions[i] = &agents[i].position;
        }
        auto evals = s.evaluate_batch(slots, positions);

        std::size_t improved = 0;
        for (std::size_t i = 0; i < agents.size(); ++i) {
            agents[i].fitness = evals[i].fitness;
            agents[i].mask = std::move(evals[i].mask);
            if (agents[i].fitness < pbest_fitness_[i]) {
                pbest_[i] = agents[i].position;
                pbest_fitness_[i] = agents[i].fitness;
                ++improved;
            }
        }
        return improved;
    }

    const std::vector<Position>& velocity() const { return velocity_; }
    std::vector<Position>& velocity() { return velocity_; }
    const std::vector<Position>& personal_best() const { return pbest_; }
    const std::vector<double>& personal_best_fitness() const { return pbest_fitness_; }

private:
    static Position zero_position(const SearchSpace& space) {
        return Position(space.n_variables, zero_init(space.space_dim));
    }

    std::vector<Position> velocity_;
    std::vector<Position> pbest_;
    std::vector<double> pbest_fitness_;
};

}  // namespace detail

/// Particle swarm optimization (Kennedy & Eberhart) with constant inertia:
///   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x),   x <- clamp(x + v)
/// with r1, r2 ~ U(0, 1) drawn per coefficient. Velocities start at zero.
class ParticleSwarm {
public:
    explicit ParticleSwarm(PsoParams params = {}) : params_(params) {}

    void initialize(Search& s) { memory_.reset(s); }
    void step(Search& s) { memory_.advance(s, params_.w, params_.c1, params_.c2); }

    const detail::SwarmMemory& memory() const { return memory_; }

private:
    PsoParams params_;
    detail::SwarmMemory memory_;
};

/// Success-ratio inertia: w = (w_max - w_min) * successes / m + w_min.
inline double adaptive_inertia(std::size_t successes, std::size_t swarm_size, double w_min, double w_max) {
    return (w_max - w_min) * (static_cast<double>(successes) / static_cast<double>(swarm_size)) + w_min;
}

/// PSO with adaptive inertia weight (Nickabadi et al.). A particle counts as a
/// success when it improves its personal best during the iteration; the resulting
/// ratio sets the inertia used by the next move. The first move uses w_max.
class AdaptiveInertiaSwarm {
public:
    explicit AdaptiveInertiaSwarm(AiwpsoParams params = {}) : params_(params), inertia_(params.w_max) {}

    void initialize(Search& s) {
        memory_.reset(s);
        inertia_ = params_.w_max;
    }

    void step(Search& s) {
        const std::size_t successes = memory_.advance(s, inertia_, params_.c1, params_.c2);
        inertia_ = adaptive_inertia(successes, s.size(), params_.w_min, params_.w_max);
    }

    double inertia() const { return inertia_; }

private:
    AiwpsoParams params_;
    double inertia_;
    detail::SwarmMemory memory_;
};

}  // namespace hyperselect
