#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "hyperselect/algorithms/levy.hpp"
#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

/// Number of worst nests abandoned per iteration: floor(p m), never the whole population.
inline std::size_t abandoned_nests(double p_discard, std::size_t nests) {
    const auto n = static_cast<std::size_t>(std::floor(p_discard * static_cast<double>(nests)));
    return std::min(n, nests - 1);
}

/// Cuckoo search (Yang & Deb).
///
/// Levy phase: nest i lays x' = clamp(x_i + step * L (x_i - gbest)), one Levy draw per
/// coefficient. x' is evaluated and replaces a uniformly chosen nest k when strictly
/// better than it. Discard phase: the floor(p m) worst nests (ties broken towards the
/// higher index) are rebuilt with rand_init and re-evaluated.
class CuckooSearch {
public:
    explicit CuckooSearch(CsParams params = {}) : params_(params), levy_(params.beta) {}

    void initialize(Search&) {}

    void step(Search& s) {
        lay_eggs(s);
        abandon_worst(s);
    }

private:
    void lay_eggs(Search& s) {
        const Position gbest = s.best().position;
        auto& agents = s.agents();
        auto& rng = s.rng();
        for (std::size_t i = 0; i < agents.size(); ++i) {
            Position egg = agents[i].position;
            for (std::size_t j = 0; j < egg.size(); ++j) {
                for (std::size_t d = 0; d < egg[j].dim(); ++d) {
                    egg[j][d] += params_.step * levy_.sample(rng) * (egg[j][d] - gbest[j][d]);
                }
            }
            s.commit(egg);
            auto e = s.evaluate(i, egg);
            const std::size_t host = rng.index(agents.size());
            if (e.fitness < agents[host].fitness) {
                agents[host].position = std::move(egg);
                agents[host].fitness = e.fitness;
                agents[host].mask = std::move(e.mask);
            }
        }
    }

    void abandon_worst(Search& s) {
        auto& agents = s.agents();
        const std::size_t n = abandoned_nests(params_.p_discard, agents.size());
        if (n == 0) return;
        std::vector<std::size_t> order(agents.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return agents[a].fitness < agents[b].fitness; });
        std::vector<std::size_t> worst(order.end() - static_cast<std::ptrdiff_t>(n), order.end());
        std::sort(worst.begin(), worst.end());
        for (std::size_t i : worst) {
            agents[i].position = s.random_position();
            auto e = s.evaluate(i, agents[i].position);
            agents[i].fitness = e.fitness;
            agents[i].mask = std::move(e.mask);
        }
    }

    CsParams params_;
    LevySampler levy_;
};

}  // namespace hyperselect
