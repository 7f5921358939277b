#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

#include "hyperselect/random.hpp"

namespace hyperselect {

/// Lower and upper edge of the coefficient domain every framework update clamps into.
inline constexpr double kCoefficientMin = 0.0;
inline constexpr double kCoefficientMax = 1.0;

inline constexpr std::size_t kMaxSpaceDim = 8;

constexpr bool valid_space_dim(std::size_t dim) {
    return dim == 1 || dim == 2 || dim == 4 || dim == 8;
}

/// A hypercomplex number stored as its D real coefficients (h_0 .. h_{D-1}).
///
/// D = 1 is a plain real, D = 4 a quaternion and D = 8 an octonion. Only the
/// component-wise operators the search loop needs are provided; no Hamilton or
/// Cayley-Dickson products.
class Hypercomplex {
public:
    explicit Hypercomplex(std::size_t dim) : dim_(checked_dim(dim)) {}

    Hypercomplex(std::initializer_list<double> coefficients)
        : Hypercomplex(std::span<const double>(coefficients.begin(), coefficients.size())) {}

    explicit Hypercomplex(std::span<const double> coefficients) : dim_(checked_dim(coefficients.size())) {
        std::copy(coefficients.begin(), coefficients.end(), coeffs_.begin());
    }

    std::size_t dim() const { return dim_; }

    double operator[](std::size_t d) const { return coeffs_[d]; }
    double& operator[](std::size_t d) { return coeffs_[d]; }

    std::span<const double> coefficients() const { return {coeffs_.data(), dim_}; }
    std::span<double> coefficients() { return {coeffs_.data(), dim_}; }

    Hypercomplex& operator+=(const Hypercomplex& rhs) {
        require_same_dim(rhs);
        for (std::size_t d = 0; d < dim_; ++d) coeffs_[d] += rhs.coeffs_[d];
        return *this;
    }

    Hypercomplex& operator-=(const Hypercomplex& rhs) {
        require_same_dim(rhs);
        for (std::size_t d = 0; d < dim_; ++d) coeffs_[d] -= rhs.coeffs_[d];
        return *this;
    }

    Hypercomplex& operator*=(double s) {
        for (std::size_t d = 0; d < dim_; ++d) coeffs_[d] *= s;
        return *this;
    }

    friend Hypercomplex operator+(Hypercomplex a, const Hypercomplex& b) { return a += b; }
    friend Hypercomplex operator-(Hypercomplex a, const Hypercomplex& b) { return a -= b; }
    friend Hypercomplex operator*(Hypercomplex a, double s) { return a *= s; }
    friend Hypercomplex operator*(double s, Hypercomplex a) { return a *= s; }

    friend bool operator==(const Hypercomplex& a, const Hypercomplex& b) {
        return a.dim_ == b.dim_ && std::equal(a.coeffs_.begin(), a.coeffs_.begin() + a.dim_, b.coeffs_.begin());
    }

private:
    static std::size_t checked_dim(std::size_t dim) {
        if (!valid_space_dim(dim)) {
            throw std::invalid_argument("hypercomplex dimension must be 1, 2, 4 or 8, got " + std::to_string(dim));
        }
        return dim;
    }

    void require_same_dim(const Hypercomplex& rhs) const {
        if (rhs.dim_ != dim_) {
            throw std::invalid_argument("hypercomplex dimension mismatch: " + std::to_string(dim_) + " vs " +
                                        std::to_string(rhs.dim_));
        }
    }

    std::array<double, kMaxSpaceDim> coeffs_{};
    std::size_t dim_;
};

inline Hypercomplex add(const Hypercomplex& a, const Hypercomplex& b) { return a + b; }
inline Hypercomplex sub(const Hypercomplex& a, const Hypercomplex& b) { return a - b; }
inline Hypercomplex scale(const Hypercomplex& a, double s) { return a * s; }

inline Hypercomplex zero_init(std::size_t dim) { return Hypercomplex(dim); }

inline Hypercomplex clamp(Hypercomplex a) {
    for (auto& c : a.coefficients()) c = std::clamp(c, kCoefficientMin, kCoefficientMax);
    return a;
}

/// Each coefficient drawn from N(0, 1), then clamped into the coefficient domain.
inline Hypercomplex rand_init(RandomStream& rng, std::size_t dim) {
    Hypercomplex q(dim);
    for (auto& c : q.coefficients()) c = rng.normal();
    return clamp(q);
}

inline bool in_domain(const Hypercomplex& a) {
    return std::all_of(a.coefficients().begin(), a.coefficients().end(),
                       [](double c) { return c >= kCoefficientMin && c <= kCoefficientMax; });
}

}  // namespace hyperselect
