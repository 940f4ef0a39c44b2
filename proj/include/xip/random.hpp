#pragma once

// Seeded random states for the verification harness and tests.

#include <cstdint>
#include <random>

#include "xip/qmat.hpp"
#include "xip/states.hpp"

namespace xip {

class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);

  // Uniform over the parameter box [-1, 1]^5, rejected until the state is valid.
  XState x_state();
  // Uniform over the tetrahedron of valid correlation triples.
  XState bell_diagonal();
  // Haar-random single-qubit unitary.
  Matrix2 unitary2();
  // Matrix of independent standard complex Gaussians.
  Matrix2 ginibre2();
  // Ginibre-distributed full-rank density matrix.
  Matrix4 density_matrix();
  // Haar-random pure state |psi><psi|.
  Matrix4 pure_state();

  std::mt19937_64& engine() { return rng_; }

 private:
  Complex gaussian_complex();

  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace xip
