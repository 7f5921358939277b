#pragma once

#include <cstddef>
#include <vector>

#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

/// Bat algorithm (Yang). Per bat and iteration, in this order:
///   1. f = f_min + (f_max - f_min) U(0,1)
///   2. v <- v + (x - gbest) f,  candidate = clamp(x + v)
///   3. if U(0,1) > pulse_rate: candidate = clamp(gbest + local_walk N(0,1)) per coefficient
///   4. evaluate candidate; accept when its fitness <= the bat's and U(0,1) < loudness
/// Loudness and pulse rate are held constant. Velocities persist even when the
/// candidate is rejected.
class BatAlgorithm {
public:
    explicit BatAlgorithm(BaParams params = {}) : params_(params) {}

    void initialize(Search& s) {
        velocity_.assign(s.size(), Position(s.space().n_variables, zero_init(s.space().space_dim)));
    }

    void step(Search& s) {
        const Position gbest = s.best().position;
        auto& agents = s.agents();
        auto& rng = s.rng();
        for (std::size_t i = 0; i < agents.size(); ++i) {
            const Position& x = agents[i].position;
            Position& v = velocity_[i];
            const double f = params_.f_min + (params_.f_max - params_.f_min) * rng.uniform();

            Position candidate = x;
            for (std::size_t j = 0; j < x.size(); ++j) {
                for (std::size_t d = 0; d < x[j].dim(); ++d) {
                    v[j][d] += (x[j][d] - gbest[j][d]) * f;
                    candidate[j][d] = x[j][d] + v[j][d];
                }
            }
            s.commit(candidate);

            if (rng.uniform() > params_.pulse_rate) {
                for (std::size_t j = 0; j < candidate.size(); ++j) {
                    for (std::size_t d = 0; d < candidate[j].dim(); ++d) {
                        candidate[j][d] = gbest[j][d] + params_.local_walk * rng.normal();
                    }
                }
                s.commit(candidate);
            }

            auto e = s.evaluate(i, candidate);
            const bool louder = rng.uniform() < params_.loudness;
            if (e.fitness <= agents[i].fitness && louder) {
                agents[i].position = std::move(candidate);
                agents[i].fitness = e.fitness;
                agents[i].mask = std::move(e.mask);
            }
        }
    }

    const std::vector<Position>& velocity() const { return velocity_; }

private:
    BaParams params_;
    std::vector<Position> velocity_;
};

}  // namespace hyperselect
