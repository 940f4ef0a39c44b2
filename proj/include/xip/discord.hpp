#pragma once

// Entropic quantum discord of two-qubit states with rank-one projective
// measurements on one side, minimized numerically over the Bloch sphere.

#include "xip/qmat.hpp"
#include "xip/sphere.hpp"

namespace xip {

struct MeasurementAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  sphere::Direction direction() const { return sphere::from_angles(theta, phi); }
};

struct DiscordResult {
  double value = 0.0;  // bits
  MeasurementAngles argmin;
  Qubit side = Qubit::A;
};

struct DiscordOptions {
  Qubit side = Qubit::A;  // measured subsystem
  int grid = 64;          // grid theta values x 2 grid phi values
  int refine_iters = 30;
};

// -sum lambda log2 lambda with 0 log 0 = 0.
double von_neumann_entropy(const Matrix2& rho);
double von_neumann_entropy(const Matrix4& rho);

// sum_k p_k S(rho_k) for the projective measurement along n on `side`, where
// rho_k is the post-measurement state of the other qubit.
double measured_conditional_entropy(const Matrix4& rho, Qubit side, const sphere::Direction& n);

// Throws InvalidState for a non-density matrix.
DiscordResult discord(const Matrix4& rho, const DiscordOptions& opts = {});

}  // namespace xip
