#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hyperselect/hypercomplex.hpp"
#include "hyperselect/random.hpp"

namespace hyperselect {

/// Selected (true) / discarded (false) flag per feature.
using FeatureMask = std::vector<bool>;

/// A decision vector: one hypercomplex number per problem feature.
using Position = std::vector<Hypercomplex>;

/// Real-valued search interval the span function maps norms onto.
struct Bounds {
    double lower = -20.0;
    double upper = 20.0;

    void validate() const {
        if (!(lower < upper)) throw std::invalid_argument("bounds require lower < upper");
    }
};

inline constexpr double kDefaultNormOrder = 2.0;

/// Minkowski p-norm of the coefficient vector.
inline double norm_p(const Hypercomplex& q, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm order p must be >= 1");
    if (p == 2.0) {
        double sum = 0.0;
        for (double c : q.coefficients()) sum += c * c;
        return std::sqrt(sum);
    }
    if (p == 1.0) {
        double sum = 0.0;
        for (double c : q.coefficients()) sum += std::abs(c);
        return sum;
    }
    double sum = 0.0;
    for (double c : q.coefficients()) sum += std::pow(std::abs(c), p);
    return std::pow(sum, 1.0 / p);
}

/// Maps ||q||_p from [0, D^(1/p)] onto [lower, upper].
///
/// The result is clamped into the bounds so round-off at the top of the norm range
/// cannot leave the interval; span(all-ones) is exactly `upper`.
inline double span(const Hypercomplex& q, double p, const Bounds& b) {
    const double norm = norm_p(q, p);
    const double max_norm = p == 1.0 ? static_cast<double>(q.dim())
                                     : std::pow(static_cast<double>(q.dim()), 1.0 / p);
    const double ratio = norm >= max_norm ? 1.0 : norm / max_norm;
    const double v = (b.upper - b.lower) * ratio + b.lower;
    return std::clamp(v, b.lower, b.upper);
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Stochastic threshold: 1 iff sigmoid(span(q)) > alpha, alpha ~ U(0, 1).
/// Consumes exactly one uniform variate.
inline bool binarize(const Hypercomplex& q, double p, const Bounds& b, RandomStream& rng) {
    const double prob = sigmoid(span(q, p, b));
    const double alpha = rng.uniform();
    return prob > alpha;
}

/// Binarizes every decision variable, in index order, with a fresh threshold each.
inline FeatureMask mask_from_position(const Position& position, double p, const Bounds& b, RandomStream& rng) {
    FeatureMask mask(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) mask[j] = binarize(position[j], p, b, rng);
    return mask;
}

/// span() of every decision variable: the real-valued solution a position encodes.
inline std::vector<double> decode(const Position& position, double p, const Bounds& b) {
    std::vector<double> out;
    out.reserve(position.size());
    for (const auto& q : position) out.push_back(span(q, p, b));
    return out;
}

inline std::size_t popcount(const FeatureMask& mask) {
    std::size_t n = 0;
    for (bool bit : mask) n += bit ? 1 : 0;
    return n;
}

}  // namespace hyperselect
