#include "xip/ip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "xip/csv.hpp"
#include "xip/errors.hpp"
#include "xip/sphere.hpp"

namespace xip {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::M11: return "M11";
    case Branch::M22: return "M22";
    case Branch::M33: return "M33";
  }
  return "?";
}

ProbeDirection ProbeDirection::make(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ParamOutOfRange("probe direction must be non-zero");
  return ProbeDirection{{x / norm, y / norm, z / norm}};
}

ProbeDirection ProbeDirection::axis(int k) {
  if (k < 1 || k > 3) throw ParamOutOfRange("probe axis must be 1, 2 or 3");
  ProbeDirection d{{0.0, 0.0, 0.0}};
  d.n[static_cast<std::size_t>(k - 1)] = 1.0;
  return d;
}

double IPBranches::branch(Branch b) const {
  switch (b) {
    case Branch::M11: return m11;
    case Branch::M22: return m22;
    case Branch::M33: return m33;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Spectral data of rho arranged for probe Hamiltonians on A:
// weight(i, l) = (q_i - q_l)^2 / (q_i + q_l) and s[m](i, l) = <psi_i|sigma_m x 1|psi_l>.
struct ProbeResponse {
  std::array<std::array<double, 4>, 4> weight{};
  std::array<Matrix4, 3> s;

  explicit ProbeResponse(const Matrix4& rho) {
    const auto eig = checked_spectrum(rho);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t l = 0; l < 4; ++l) {
        const double qi = eig.values[i], ql = eig.values[l];
        weight[i][l] = (qi + ql > kPairExclusion) ? (qi - ql) * (qi - ql) / (qi + ql) : 0.0;
      }
    const Matrix4 v = eig.vectors;
    const Matrix4 vh = v.adjoint();
    for (int m = 1; m <= 3; ++m) {
      s[static_cast<std::size_t>(m - 1)] = vh * kron2(pauli::sigma(m), pauli::id()) * v;
    }
  }

  // F / 4 for H = n.sigma.
  double quarter_qfi(const std::array<double, 3>& n) const {
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t l = i + 1; l < 4; ++l) {
        if (weight[i][l] == 0.0) continue;
        const Complex h = n[0] * s[0](i, l) + n[1] * s[1](i, l) + n[2] * s[2](i, l);
        total += weight[i][l] * std::norm(h);
      }
    return total;
  }

  MMatrix m_matrix() const {
    MMatrix out;
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t n = 0; n < 3; ++n) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t l = 0; l < 4; ++l) {
            if (weight[i][l] == 0.0) continue;
            acc += weight[i][l] * (s[m](i, l) * s[n](l, i)).real();
          }
        out.entries[m][n] = 0.5 * acc;
      }
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t n = m + 1; n < 3; ++n) {
        const double avg = 0.5 * (out.entries[m][n] + out.entries[n][m]);
        out.entries[m][n] = out.entries[n][m] = avg;
      }
    Matrix3 mc;
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t n = 0; n < 3; ++n) mc(m, n) = out.entries[m][n];
    out.smallest_eigenvalue = hermitian_eigen(mc).values[2];
    return out;
  }
};

// (l_a - l_b)^2 / (l_a + l_b) with the zero-sum pair excluded.
double pair_weight(double la, double lb) {
  return (la + lb > kPairExclusion) ? (la - lb) * (la - lb) / (la + lb) : 0.0;
}

// (x +- y)^2 / ((1 + x^2)(1 + y^2)): squared sigma_1 (+) or sigma_2 (-) overlap
// between an inner-block and an outer-block eigenvector.
double cross_factor(double x, double y, double sign) {
  const double num = x + sign * y;
  return num * num / ((1.0 + x * x) * (1.0 + y * y));
}

// sigma_3 overlap between the two eigenvectors of one block.
double within_factor(double u, double v) {
  const double num = u * v - 1.0;
  return num * num / ((1.0 + u * u) * (1.0 + v * v));
}

void select(IPBranches& b, const XState& s) {
  const double a1 = std::abs(s.c1), a2 = std::abs(s.c2);
  std::array<Branch, 3> candidates{};
  std::size_t count = 0;
  if (a1 < a2) {
    candidates = {Branch::M22, Branch::M33};
    count = 2;
  } else if (a1 > a2) {
    candidates = {Branch::M11, Branch::M33};
    count = 2;
  } else {
    candidates = {Branch::M11, Branch::M22, Branch::M33};
    count = 3;
  }
  b.active = candidates[0];
  for (std::size_t k = 1; k < count; ++k)
    if (b.branch(candidates[k]) < b.branch(b.active)) b.active = candidates[k];
  b.value = b.branch(b.active);
  b.rule_disagrees = b.value - std::min({b.m11, b.m22, b.m33}) > 1e-12;
}

IPBranches from_m_matrix(const MMatrix& m) {
  IPBranches b;
  b.m11 = m.entries[0][0];
  b.m22 = m.entries[1][1];
  b.m33 = m.entries[2][2];
  b.fallback = true;
  b.active = Branch::M11;
  for (Branch k : {Branch::M22, Branch::M33})
    if (b.branch(k) < b.branch(b.active)) b.active = k;
  b.value = m.smallest_eigenvalue;
  return b;
}

}  // namespace

double qfi(const Matrix4& rho, const ProbeDirection& n) {
  return 4.0 * ProbeResponse(rho).quarter_qfi(n.n);
}

MMatrix m_matrix(const Matrix4& rho) { return ProbeResponse(rho).m_matrix(); }

double ip_general(const Matrix4& rho) { return m_matrix(rho).smallest_eigenvalue; }

IPBranches ip_xstate(const XState& s) {
  const XEigenStructure e = x_eigensystem(s);
  if (e.degenerate_inner || e.degenerate_outer) {
    return from_m_matrix(m_matrix(to_density_matrix(s)));
  }
  const auto& l = e.lambda;
  const double w13 = pair_weight(l[0], l[2]), w14 = pair_weight(l[0], l[3]);
  const double w23 = pair_weight(l[1], l[2]), w24 = pair_weight(l[1], l[3]);

  IPBranches b;
  b.m11 = w13 * cross_factor(e.x1, e.y1, +1) + w14 * cross_factor(e.x1, e.y2, +1) +
          w23 * cross_factor(e.x2, e.y1, +1) + w24 * cross_factor(e.x2, e.y2, +1);
  b.m22 = w13 * cross_factor(e.x1, e.y1, -1) + w14 * cross_factor(e.x1, e.y2, -1) +
          w23 * cross_factor(e.x2, e.y1, -1) + w24 * cross_factor(e.x2, e.y2, -1);
  b.m33 = pair_weight(l[0], l[1]) * within_factor(e.x1, e.x2) +
          pair_weight(l[2], l[3]) * within_factor(e.y1, e.y2);
  select(b, s);
  return b;
}

namespace detail {
double bell_norm_formula(const CorrelationMatrix& c, double determinant_sign) {
  return (c.hs_norm_sq - c.op_norm_sq + determinant_sign * 2.0 * c.determinant) / (1.0 - c.op_norm_sq);
}
}  // namespace detail

IPBranches bell_branches(const CorrelationMatrix& c) {
  const XState s = XState::bell(c.c[0], c.c[1], c.c[2]);
  const auto violations = validate(s);
  if (!violations.empty()) {
    throw InvalidState("not a Bell-diagonal state (" + violations.front().name + " " +
                       format_number(violations.front().magnitude) + ")");
  }
  if (c.op_norm_sq >= 1.0 - 1e-9) return from_m_matrix(m_matrix(to_density_matrix(s)));

  IPBranches b;
  const double shared = c.hs_norm_sq + 2.0 * c.determinant;
  b.m11 = (shared - c.c[0] * c.c[0]) / (1.0 - c.c[0] * c.c[0]);
  b.m22 = (shared - c.c[1] * c.c[1]) / (1.0 - c.c[1] * c.c[1]);
  b.m33 = (shared - c.c[2] * c.c[2]) / (1.0 - c.c[2] * c.c[2]);
  b.active = branch_from_index(c.argmax_index);
  b.value = detail::bell_norm_formula(c, 1.0);
  b.rule_disagrees = b.value - std::min({b.m11, b.m22, b.m33}) > 1e-12;
  return b;
}

double ip_bell_diagonal(const CorrelationMatrix& c) { return bell_branches(c).value; }

IPBranches interferometric_power(const XState& s) {
  if (s.is_bell_diagonal()) return bell_branches(CorrelationMatrix::from(s));
  return ip_xstate(s);
}

BruteForceResult ip_bruteforce(const Matrix4& rho, const BruteForceOptions& opts) {
  if (opts.coarse_grid < 32) throw ParamOutOfRange("brute-force coarse grid must be at least 32");
  if (opts.refine_iters < 0) throw ParamOutOfRange("refinement rounds must be non-negative");
  const ProbeResponse response(rho);
  const int count = opts.coarse_grid * opts.coarse_grid;

  sphere::Minimum best{std::numeric_limits<double>::infinity(), {0.0, 0.0, 1.0}};
  for (const auto& n : sphere::fibonacci_points(count)) {
    const double v = response.quarter_qfi(n);
    if (v < best.value) best = {v, n};
  }
  const double spacing = std::sqrt(4.0 * std::numbers::pi / count);
  best = sphere::refine([&](const sphere::Direction& n) { return response.quarter_qfi(n); }, best,
                        opts.refine_iters, 2.0 * spacing);
  return {best.value, ProbeDirection::make(best.n[0], best.n[1], best.n[2])};
}

}  // namespace xip
