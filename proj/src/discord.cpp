#include "xip/discord.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "xip/errors.hpp"
#include "xip/states.hpp"

namespace xip {

namespace {

double entropy_term(double lambda, double norm) {
  return lambda > 0.0 ? -lambda * std::log2(lambda / norm) : 0.0;
}

// p S(X / p) for a positive 2x2 matrix X of trace p.
double weighted_entropy(const Matrix2& x) {
  const double p = x(0, 0).real() + x(1, 1).real();
  if (!(p > 0.0)) return 0.0;
  const double half_diff = 0.5 * (x(0, 0).real() - x(1, 1).real());
  const double rad = std::sqrt(half_diff * half_diff + std::norm(x(0, 1)));
  return entropy_term(0.5 * p + rad, p) + entropy_term(0.5 * p - rad, p);
}

// Reduced operators of rho for measurements on `side`: the other qubit's state
// and t[m] = Tr_side[(sigma_m on side) rho].
struct Conditionals {
  Matrix2 other;
  std::array<Matrix2, 3> t;

  Conditionals(const Matrix4& rho, Qubit side) {
    for (int m = 0; m <= 3; ++m) {
      const Matrix2 sig = m == 0 ? pauli::id() : pauli::sigma(m);
      Matrix2 acc;
      // rho index = 2 a + b, a on A, b on B.
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          Complex v = 0.0;
          for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t l = 0; l < 2; ++l) {
              // Tr_side[(sig on side) rho](i, j) = sum_{k,l} sig(l, k) rho(.., ..)
              if (side == Qubit::A) {
                v += sig(l, k) * rho(2 * k + i, 2 * l + j);
              } else {
                v += sig(l, k) * rho(2 * i + k, 2 * j + l);
              }
            }
          acc(i, j) = v;
        }
      if (m == 0) {
        other = acc;
      } else {
        t[static_cast<std::size_t>(m - 1)] = acc;
      }
    }
  }

  double conditional_entropy(const sphere::Direction& n) const {
    const Matrix2 shift = n[0] * t[0] + n[1] * t[1] + n[2] * t[2];
    return weighted_entropy(0.5 * (other + shift)) + weighted_entropy(0.5 * (other - shift));
  }
};

Matrix2 partial_trace(const Matrix4& rho, Qubit keep) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        out(i, j) += keep == Qubit::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
  return out;
}

}  // namespace

double von_neumann_entropy(const Matrix2& rho) {
  if (!is_hermitian(rho, 1e-12)) throw InvalidState("2x2 density matrix is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) throw InvalidState("2x2 density matrix trace is not one");
  return weighted_entropy(rho);
}

double von_neumann_entropy(const Matrix4& rho) {
  const auto eig = checked_spectrum(rho);
  double s = 0.0;
  for (double q : eig.values) s += entropy_term(q, 1.0);
  return s;
}

double measured_conditional_entropy(const Matrix4& rho, Qubit side, const sphere::Direction& n) {
  return Conditionals(rho, side).conditional_entropy(n);
}

DiscordResult discord(const Matrix4& rho, const DiscordOptions& opts) {
  if (opts.grid < 2) throw ParamOutOfRange("discord grid must have at least 2 points");
  if (opts.refine_iters < 0) throw ParamOutOfRange("refinement rounds must be non-negative");

  const double s_ab = von_neumann_entropy(rho);
  const double s_measured = weighted_entropy(partial_trace(rho, opts.side));
  const Conditionals cond(rho, opts.side);

  const auto objective = [&](const sphere::Direction& n) { return cond.conditional_entropy(n); };

  sphere::Minimum best{std::numeric_limits<double>::infinity(), {0.0, 0.0, 1.0}};
  const int n_theta = opts.grid;
  const int n_phi = 2 * opts.grid;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::numbers::pi * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      const auto n = sphere::from_angles(theta, phi);
      const double v = objective(n);
      if (v < best.value) best = {v, n};
    }
  }
  best = sphere::refine(objective, best, opts.refine_iters, 2.0 * std::numbers::pi / (n_theta - 1));

  const auto angles = sphere::to_angles(best.n);
  DiscordResult out;
  out.value = s_measured - s_ab + best.value;
  out.argmin = {angles[0], angles[1]};
  out.side = opts.side;
  return out;
}

}  // namespace xip
