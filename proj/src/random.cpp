#include "xip/random.hpp"

#include <cmath>

namespace xip {

double StateSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Complex StateSampler::gaussian_complex() { return {normal_(rng_), normal_(rng_)}; }

XState StateSampler::x_state() {
  for (;;) {
    XState s{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    if (validate(s).empty()) return s;
  }
}

XState StateSampler::bell_diagonal() {
  for (;;) {
    XState s = XState::bell(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    if (validate(s).empty()) return s;
  }
}

Matrix2 StateSampler::unitary2() {
  // QR of a Ginibre matrix with the phase fix on R's diagonal.
  Complex a = gaussian_complex(), b = gaussian_complex();
  const double na = std::sqrt(std::norm(a) + std::norm(b));
  a /= na;
  b /= na;
  const double phase = uniform(0.0, 2.0 * M_PI);
  const Complex w = std::polar(1.0, phase);
  return Matrix2{a, -std::conj(b) * w, b, std::conj(a) * w};
}

Matrix2 StateSampler::ginibre2() {
  return Matrix2{gaussian_complex(), gaussian_complex(), gaussian_complex(), gaussian_complex()};
}

Matrix4 StateSampler::density_matrix() {
  Matrix4 g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = gaussian_complex();
  Matrix4 rho = g * g.adjoint();
  const double tr = rho.trace().real();
  return rho * Complex(1.0 / tr, 0.0);
}

Matrix4 StateSampler::pure_state() {
  Vector<4> psi{};
  double norm = 0.0;
  for (auto& z : psi) {
    z = gaussian_complex();
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  for (auto& z : psi) z /= norm;
  Matrix4 rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return rho;
}

}  // namespace xip
