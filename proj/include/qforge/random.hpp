#pragma once

#include <cstdint>
#include <random>

#include "qforge/qmath.hpp"

namespace qforge {

/// Seeded source of random test states. Deterministic for a given seed on a
/// given standard library.
class StateSampler {
  public:
    explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

    /// Haar-random pure state (normalized complex Gaussian vector).
    PureState2Q pure();
    /// Ginibre ensemble: G G^dagger / Tr(G G^dagger) with G a 4x4 complex Gaussian.
    DensityMatrix2Q density();
    /// Haar-random U(2).
    SingleQubitUnitary unitary();
    /// Uniform point on the probability simplex with 4 vertices.
    std::array<double, 4> simplex();
    double uniform(double lo, double hi);

  private:
    Complex gaussian();
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qforge
