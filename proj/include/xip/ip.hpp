#pragma once

// Interferometric power (IP) of two-qubit states, probed on qubit A:
//
//   IP(rho) = min over unit n of F(rho, n.sigma x 1) / 4 = smallest eigenvalue of M,
//
// available through three independent routes (closed-form X-state branches, the
// 3x3 response matrix M, and a brute-force search over probe directions) plus
// the norm formula for Bell-diagonal states.

#include <array>
#include <string>

#include "xip/qmat.hpp"
#include "xip/states.hpp"

namespace xip {

enum class Branch { M11 = 1, M22 = 2, M33 = 3 };

std::string to_string(Branch b);
inline int index_of(Branch b) { return static_cast<int>(b); }
inline Branch branch_from_index(int k) { return static_cast<Branch>(k); }

// Eigenpairs with q_i + q_j at or below this count as "q_i + q_j = 0".
inline constexpr double kPairExclusion = 1e-12;

struct ProbeDirection {
  std::array<double, 3> n{0.0, 0.0, 1.0};

  // Normalizes; throws ParamOutOfRange for a zero or non-finite vector.
  static ProbeDirection make(double x, double y, double z);
  static ProbeDirection axis(int k);  // k = 1, 2, 3
};

struct IPBranches {
  double m11 = 0.0, m22 = 0.0, m33 = 0.0;
  Branch active = Branch::M11;
  double value = 0.0;
  // The closed form could not be used and the M-matrix route supplied the numbers.
  bool fallback = false;
  // The two-candidate selection rule disagreed with the plain three-way minimum.
  bool rule_disagrees = false;

  double branch(Branch b) const;
};

struct MMatrix {
  std::array<std::array<double, 3>, 3> entries{};
  double smallest_eigenvalue = 0.0;
};

// Quantum Fisher information 4 sum_{i<j} (q_i - q_j)^2 / (q_i + q_j) |<psi_i|H x 1|psi_j>|^2
// for H = n.sigma. Throws InvalidState for a non-density matrix.
double qfi(const Matrix4& rho, const ProbeDirection& n);

MMatrix m_matrix(const Matrix4& rho);

double ip_general(const Matrix4& rho);

// Closed-form branch values M11, M22, M33 from the X-state eigenstructure, with
// the candidate rule {M22, M33} for |c1| < |c2|, {M11, M33} for |c1| > |c2| and
// all three on a tie. Degenerate blocks (c1 = +-c2) fall back to m_matrix.
IPBranches ip_xstate(const XState& s);

// Branches (M_kk = (|C|^2 - c_k^2 + 2 det C) / (1 - c_k^2)) and the norm formula
// (|C|^2 - |C|_inf^2 + 2 det C) / (1 - |C|_inf^2) for Bell-diagonal states; falls
// back to m_matrix when |C|_inf^2 >= 1 - 1e-9. Throws InvalidState for a non-state.
IPBranches bell_branches(const CorrelationMatrix& c);
double ip_bell_diagonal(const CorrelationMatrix& c);

// Bell-diagonal states use the norm formula, other X states the branch formulas.
IPBranches interferometric_power(const XState& s);

struct BruteForceOptions {
  int coarse_grid = 64;  // coarse_grid^2 Fibonacci points
  int refine_iters = 40;
};

struct BruteForceResult {
  double value = 0.0;
  ProbeDirection argmin;
};

// Direct minimization of F/4 over the probe sphere. The result is an upper bound
// on the smallest eigenvalue of M (F/4 is the quadratic form n^T M n).
BruteForceResult ip_bruteforce(const Matrix4& rho, const BruteForceOptions& opts = {});

namespace detail {
// The norm formula with the sign of the determinant term exposed; +1 is the
// correct formula. Used by the verification harness to prove it can fail.
double bell_norm_formula(const CorrelationMatrix& c, double determinant_sign);
}  // namespace detail

}  // namespace xip
