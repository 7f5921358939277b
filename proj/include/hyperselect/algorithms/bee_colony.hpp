#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

/// Artificial bee colony (Karaboga). One food source per agent.
///
/// Each iteration runs three phases:
///  - employed: every source i tries x'_j = x_j + phi (x_j - x_kj) on one random
///    variable j with a random partner k != i, phi ~ U(-1,1) per coefficient;
///  - onlooker: m sources are picked by roulette over 1/(1+f) and tried the same way;
///  - scout: every source whose trial counter reached trials_limit is rebuilt with
///    rand_init and re-evaluated.
/// A trial replaces the source only when strictly better; the counter is reset on
/// improvement and incremented by one otherwise. Evaluations per iteration: 2m plus
/// the number of scouts.
class ArtificialBeeColony {
public:
    explicit ArtificialBeeColony(AbcParams params = {}) : params_(params) {}

    void initialize(Search& s) { trials_.assign(s.size(), 0); }

    void step(Search& s) {
        auto& agents = s.agents();
        auto& rng = s.rng();
        const std::size_t m = agents.size();

        for (std::size_t i = 0; i < m; ++i) try_neighbour(s, i);

        for (std::size_t t = 0; t < m; ++t) {
            double total = 0.0;
            for (const auto& a : agents) total += nectar(a.fitness);
            const double target = rng.uniform() * total;
            std::size_t pick = m - 1;
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                acc += nectar(agents[i].fitness);
                if (target < acc) {
                    pick = i;
                    break;
                }
            }
            try_neighbour(s, pick);
        }

        for (std::size_t i = 0; i < m; ++i) {
            if (trials_[i] < params_.trials_limit) continue;
            agents[i].position = s.random_position();
            auto e = s.evaluate(i, agents[i].position);
            agents[i].fitness = e.fitness;
            agents[i].mask = std::move(e.mask);
            trials_[i] = 0;
        }
    }

    /// Food-source quality used by the onlooker roulette.
    static double nectar(double fitness) { return fitness >= 0.0 ? 1.0 / (1.0 + fitness) : 1.0 + std::abs(fitness); }

    const std::vector<std::size_t>& trials() const { return trials_; }

private:
    void try_neighbour(Search& s, std::size_t i) {
        auto& agents = s.agents();
        auto& rng = s.rng();
        const std::size_t m = agents.size();
        const std::size_t j = rng.index(s.space().n_variables);
        std::size_t k = i;
        if (m > 1) {
            k = rng.index(m - 1);
            if (k >= i) ++k;
        }
        Position candidate = agents[i].position;
        const Hypercomplex& partner = agents[k].position[j];
        Hypercomplex& q = candidate[j];
        for (std::size_t d = 0; d < q.dim(); ++d) {
            const double phi = rng.uniform(-1.0, 1.0);
            q[d] += phi * (q[d] - partner[d]);
        }
        s.commit(q);
        auto e = s.evaluate(i, candidate);
        if (e.fitness < agents[i].fitness) {
            agents[i].position = std::move(candidate);
            agents[i].fitness = e.fitness;
            agents[i].mask = std::move(e.mask);
            trials_[i] = 0;
        } else {
            ++trials_[i];
        }
    }

    AbcParams params_;
    std::vector<std::size_t> trials_;
};

}  // namespace hyperselect
