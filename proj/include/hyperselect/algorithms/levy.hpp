#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyperselect/random.hpp"

namespace hyperselect {

/// Heavy-tailed step generator using Mantegna's algorithm:
///   u ~ N(0, sigma_u^2), v ~ N(0, 1), step = u / |v|^(1/beta)
/// with sigma_u = [G(1+b) sin(pi b/2) / (G((1+b)/2) b 2^((b-1)/2))]^(1/b).
class LevySampler {
public:
    explicit LevySampler(double beta) : beta_(beta), sigma_u_(mantegna_sigma(beta)) {}

    static double mantegna_sigma(double beta) {
        if (!(beta > 0.0 && beta <= 2.0)) throw std::invalid_argument("Levy exponent beta must lie in (0, 2]");
        const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
        const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
        // sin(pi) rounds to a tiny positive value, so the ratio stays non-negative on (0, 2].
        return std::pow(std::max(num / den, 0.0), 1.0 / beta);
    }

    double beta() const { return beta_; }
    double sigma_u() const { return sigma_u_; }

    /// Consumes two normal variates per attempt; a zero denominator is redrawn.
    double sample(RandomStream& rng) const {
        for (;;) {
            const double u = sigma_u_ * rng.normal();
            const double v = rng.normal();
            if (v != 0.0) return u / std::pow(std::abs(v), 1.0 / beta_);
        }
    }

private:
    double beta_;
    double sigma_u_;
};

}  // namespace hyperselect
