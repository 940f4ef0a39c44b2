#pragma once

// Test-side generators and independent reference computations. Nothing here
// calls into the library's numerical routines.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "xip/qmat.hpp"
#include "xip/states.hpp"

namespace xtest {

using cd = std::complex<double>;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Convex mixture of the four Bell projectors: c = sum_k w_k * corners[k].
  xip::XState bell_mixture() {
    static constexpr double corners[4][3] = {{1, -1, 1}, {-1, 1, 1}, {1, 1, -1}, {-1, -1, -1}};
    std::array<double, 4> w{};
    double sum = 0.0;
    for (auto& x : w) {
      x = -std::log(uniform(1e-12, 1.0));
      sum += x;
    }
    xip::XState s;
    for (int k = 0; k < 4; ++k) {
      s.c1 += w[k] / sum * corners[k][0];
      s.c2 += w[k] / sum * corners[k][1];
      s.c3 += w[k] / sum * corners[k][2];
    }
    return s;
  }

  // X state built from nonnegative block data: populations p (sum 1) and
  // coherences bounded by sqrt of the paired populations.
  xip::XState x_state() {
    std::array<double, 4> p{};
    double sum = 0.0;
    for (auto& x : p) {
      x = -std::log(uniform(1e-12, 1.0));
      sum += x;
    }
    for (auto& x : p) x /= sum;
    const double outer = uniform(-1.0, 1.0) * std::sqrt(p[0] * p[3]);
    const double inner = uniform(-1.0, 1.0) * std::sqrt(p[1] * p[2]);
    xip::XState s;
    s.r = p[0] + p[1] - p[2] - p[3];
    s.sB = p[0] - p[1] + p[2] - p[3];
    s.c3 = p[0] - p[1] - p[2] + p[3];
    s.c1 = 2.0 * (inner + outer);
    s.c2 = 2.0 * (inner - outer);
    return s;
  }

  template <std::size_t N>
  xip::Matrix<N> hermitian() {
    xip::Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i) {
      m(i, i) = normal();
      for (std::size_t j = i + 1; j < N; ++j) {
        m(i, j) = cd(normal(), normal());
        m(j, i) = std::conj(m(i, j));
      }
    }
    return m;
  }

  xip::Matrix4 density() {
    xip::Matrix4 g;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) g(i, j) = cd(normal(), normal());
    xip::Matrix4 rho = g * g.adjoint();
    return rho * cd(1.0 / rho.trace().real(), 0.0);
  }

  xip::Matrix2 unitary() {
    const double a = uniform(0, 2 * M_PI), b = uniform(0, 2 * M_PI), c = uniform(0, 2 * M_PI);
    const double th = std::acos(uniform(-1.0, 1.0)) / 2.0;
    return xip::Matrix2{std::polar(std::cos(th), a), std::polar(std::sin(th), b),
                        -std::polar(std::sin(th), c - b), std::polar(std::cos(th), c - a)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

template <std::size_t N>
Eigen::Matrix<cd, N, N> to_eigen(const xip::Matrix<N>& m) {
  Eigen::Matrix<cd, N, N> e;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) e(i, j) = m(i, j);
  return e;
}

// Ascending eigenvalues from Eigen's solver.
template <std::size_t N>
std::array<double, N> reference_eigenvalues(const xip::Matrix<N>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cd, N, N>> es(to_eigen(m));
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

inline Eigen::Matrix4cd pauli_on_a(int k) {
  Eigen::Matrix2cd s;
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, cd(0, -1), cd(0, 1), 0;
  if (k == 3) s << 1, 0, 0, -1;
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = s(i, j) * Eigen::Matrix2cd::Identity();
  return out;
}

// Response matrix via Eigen's eigensolver; the reference for M and its spectrum.
inline Eigen::Matrix3d reference_m(const xip::Matrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(to_eigen(rho));
  const auto& q = es.eigenvalues();
  const auto& v = es.eigenvectors();
  std::array<Eigen::Matrix4cd, 3> s;
  for (int k = 0; k < 3; ++k) s[k] = v.adjoint() * pauli_on_a(k + 1) * v;
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) {
          const double sum = q(i) + q(l);
          if (sum <= 1e-12) continue;
          const double d = q(i) - q(l);
          m(a, b) += 0.5 * d * d / sum * (s[a](i, l) * s[b](l, i)).real();
        }
  return 0.5 * (m + m.transpose());
}

inline double reference_ip(const xip::Matrix4& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(reference_m(rho));
  return es.eigenvalues()(0);
}

// Corrected diagonal of M for Bell-diagonal states.
inline std::array<double, 3> bell_m_diagonal(double c1, double c2, double c3) {
  const double det2 = 2.0 * c1 * c2 * c3;
  return {(c2 * c2 + c3 * c3 + det2) / (1.0 - c1 * c1), (c1 * c1 + c3 * c3 + det2) / (1.0 - c2 * c2),
          (c1 * c1 + c2 * c2 + det2) / (1.0 - c3 * c3)};
}

// Closed-form discord of Bell-diagonal states (bits).
inline double bell_discord(double c1, double c2, double c3) {
  const double lam[4] = {(1 - c1 - c2 - c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 - c2 + c3) / 4,
                         (1 + c1 + c2 - c3) / 4};
  double total = 0.0;
  for (double l : lam)
    if (l > 0) total += l * std::log2(4 * l);
  const double c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  auto h = [](double x) { return x > 0 ? x * std::log2(x) : 0.0; };
  return total - 0.5 * (h(1 - c) + h(1 + c));
}

// Bath decoherence function for J(w) = w^s wc^{1-s} e^{-w/wc}:
// Gamma(t) = Gamma_fn(s-1) [1 - Re (1 - i wc t)^{-(s-1)}].
inline double bath_gamma_closed(double t, double s, double wc) {
  const std::complex<double> base(1.0, -wc * t);
  return std::tgamma(s - 1.0) * (1.0 - std::pow(base, -(s - 1.0)).real());
}

// Colored dephasing attenuation from the defining ODE
// Lambda'' + 2 Lambda' + (4 a tau)^2 Lambda = 0, Lambda(0) = 1, Lambda'(0) = 0, via RK4.
inline double colored_lambda_ode(double nu, double a, double tau) {
  const double k2 = std::pow(4.0 * a * tau, 2);
  const int steps = std::max(1000, static_cast<int>(nu * 20000));
  const double h = nu / steps;
  double y = 1.0, v = 0.0;
  auto f = [&](double yy, double vv) { return std::array<double, 2>{vv, -2.0 * vv - k2 * yy}; };
  for (int i = 0; i < steps; ++i) {
    const auto k1 = f(y, v);
    const auto kk2 = f(y + 0.5 * h * k1[0], v + 0.5 * h * k1[1]);
    const auto k3 = f(y + 0.5 * h * kk2[0], v + 0.5 * h * kk2[1]);
    const auto k4 = f(y + h * k3[0], v + h * k3[1]);
    y += h / 6 * (k1[0] + 2 * kk2[0] + 2 * k3[0] + k4[0]);
    v += h / 6 * (k1[1] + 2 * kk2[1] + 2 * k3[1] + k4[1]);
  }
  return y;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace xtest
