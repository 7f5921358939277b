#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

/// Firefly algorithm (Yang).
///
/// Brightness is the fitness at the start of the iteration. Pairs are visited with i
/// ascending, then j ascending; whenever firefly j is brighter than i, i moves in place:
///   x_i <- clamp(x_i + beta0 exp(-gamma r^2) (x_j - x_i) + alpha (U(0,1) - 0.5))
/// where r is the Euclidean distance over all coefficients of both positions (already
/// moved fireflies use their new position). A firefly with no brighter peer takes only
/// the alpha random walk. The swarm is evaluated as one batch afterwards.
class FireflyAlgorithm {
public:
    explicit FireflyAlgorithm(FaParams params = {}) : params_(params) {}

    void initialize(Search&) {}

    void step(Search& s) {
        auto& agents = s.agents();
        auto& rng = s.rng();
        std::vector<double> brightness(agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) brightness[i] = agents[i].fitness;

        for (std::size_t i = 0; i < agents.size(); ++i) {
            Position& xi = agents[i].position;
            bool moved = false;
            for (std::size_t j = 0; j < agents.size(); ++j) {
                if (!(brightness[j] < brightness[i])) continue;
                const Position& xj = agents[j].position;
                const double attraction = attractiveness(squared_distance(xi, xj));
                for (std::size_t k = 0; k < xi.size(); ++k) {
                    for (std::size_t d = 0; d < xi[k].dim(); ++d) {
                        xi[k][d] += attraction * (xj[k][d] - xi[k][d]) + params_.alpha * (rng.uniform() - 0.5);
                    }
                }
                s.commit(xi);
                moved = true;
            }
            if (!moved) {
                for (auto& q : xi) {
                    for (std::size_t d = 0; d < q.dim(); ++d) q[d] += params_.alpha * (rng.uniform() - 0.5);
                }
                s.commit(xi);
            }
        }

        std::vector<std::size_t> slots(agents.size());
        std::vector<const Position*> positions(agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) {
            slots[i] = i;
            positions[i] = &agents[i].position;
        }
        auto evals = s.evaluate_batch(slots, positions);
        for (std::size_t i = 0; i < agents.size(); ++i) {
            agents[i].fitness = evals[i].fitness;
            agents[i].mask = std::move(evals[i].mask);
        }
    }

    double attractiveness(double r2) const {
        // r = 0 would give exp(-inf * 0) for an infinite gamma; the pull is zero there anyway.
        if (r2 == 0.0) return params_.beta0;
        return params_.beta0 * std::exp(-params_.gamma * r2);
    }

    static double squared_distance(const Position& a, const Position& b) {
        double sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            for (std::size_t d = 0; d < a[k].dim(); ++d) {
                const double diff = a[k][d] - b[k][d];
                sum += diff * diff;
            }
        }
        return sum;
    }

private:
    FaParams params_;
};

}  // namespace hyperselect
