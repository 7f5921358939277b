#pragma once

#include <cstddef>

#include "hyperselect/algorithms/levy.hpp"
#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

/// Flower pollination algorithm (Yang).
///
/// For each flower, with probability p_local: local pollination
///   x' = clamp(x + eps (x_a - x_b)),  eps ~ U(0,1), a != b chosen uniformly,
/// otherwise global pollination with one Levy draw per coefficient
///   x' = clamp(x + L (gbest - x)).
/// x' replaces x when its fitness is not worse. A population of one cannot pick two
/// distinct partners, so a local move there leaves the flower untouched and unevaluated.
class FlowerPollination {
public:
    explicit FlowerPollination(FpaParams params = {}) : params_(params), levy_(params.beta) {}

    void initialize(Search&) {}

    void step(Search& s) {
        const Position gbest = s.best().position;
        auto& agents = s.agents();
        auto& rng = s.rng();
        const std::size_t m = agents.size();
        for (std::size_t i = 0; i < m; ++i) {
            Position candidate = agents[i].position;
            if (rng.uniform() < params_.p_local) {
                if (m < 2) continue;
                const std::size_t a = rng.index(m);
                std::size_t b = rng.index(m - 1);
                if (b >= a) ++b;
                const double eps = rng.uniform();
                const Position& xa = agents[a].position;
                const Position& xb = agents[b].position;
                for (std::size_t j = 0; j < candidate.size(); ++j) {
                    for (std::size_t d = 0; d < candidate[j].dim(); ++d) {
                        candidate[j][d] += eps * (xa[j][d] - xb[j][d]);
                    }
                }
            } else {
                for (std::size_t j = 0; j < candidate.size(); ++j) {
                    for (std::size_t d = 0; d < candidate[j].dim(); ++d) {
                        candidate[j][d] += levy_.sample(rng) * (gbest[j][d] - candidate[j][d]);
                    }
                }
            }
            s.commit(candidate);
            auto e = s.evaluate(i, candidate);
            if (e.fitness <= agents[i].fitness) {
                agents[i].position = std::move(candidate);
                agents[i].fitness = e.fitness;
                agents[i].mask = std::move(e.mask);
            }
        }
    }

private:
    FpaParams params_;
    LevySampler levy_;
};

}  // namespace hyperselect
