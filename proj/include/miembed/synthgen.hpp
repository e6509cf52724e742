#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "miembed/dataset.hpp"

namespace miembed {

/// Generation parameters for one synthetic dataset.
///
/// Coefficient meaning per class:
///   Linear    (a, b)           a*x + b
///   Quadratic (a, b, c)        a*x^2 + b*x + c
///   Quartic   (a, b, c, d, e)  a*x^4 + b*x^3 + c*x^2 + d*x + e
///   Gaussian  (a, mu, sigma)   a * exp(-(x - mu)^2 / (2 sigma^2)), sigma > 0
///   Sinusoid  (a, f, phi)      a * sin(2 pi f x + phi)
struct GenParams {
    RelationshipClass cls = RelationshipClass::Linear;
    std::vector<double> coefficients;
    double noise_sigma = 0.0;
    double x_low = -3.0;
    double x_high = 3.0;
    std::size_t n = 1000;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;

    friend bool operator==(const GenParams&, const GenParams&) = default;
};

std::size_t class_arity(RelationshipClass c);

/// Noise-free value of the relationship at x.
double relationship_value(RelationshipClass c, std::span<const double> coefficients, double x);

/// x uniform in [x_low, x_high], sorted, then y = f(x) + N(0, noise_sigma^2),
/// all from one seeded stream. Output depends only on the parameters.
Dataset generate(const GenParams& p);

inline const std::vector<double> kDefaultNoiseGrid{0.0, 0.05, 0.1, 0.2};

/// Random parameters for a class: n = 1000, x in [-3, 3], noise_sigma drawn
/// from noise_grid scaled by the curve's half-range over x.
GenParams sample_params(RelationshipClass c, std::uint64_t seed,
                        std::span<const double> noise_grid = kDefaultNoiseGrid);

/// per_class labeled datasets for each class, classes in declaration order.
std::vector<Dataset> corpus(std::size_t per_class, std::uint64_t seed,
                            std::span<const double> noise_grid = kDefaultNoiseGrid);

/// The parameter sets corpus() generates from, in the same order.
std::vector<GenParams> corpus_params(std::size_t per_class, std::uint64_t seed,
                                     std::span<const double> noise_grid = kDefaultNoiseGrid);

}  // namespace miembed
