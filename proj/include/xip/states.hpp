#pragma once

// Two-qubit X states
//
//   rho = (1/4) (1x1 + r sz x 1 + s 1 x sz + sum_j c_j s_j x s_j)
//
// with the block structure used by the closed-form interferometric power: the
// "inner" block lives on span{|01>, |10>} and the "outer" block on span{|00>, |11>}.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "xip/qmat.hpp"

namespace xip {

struct XState {
  double r = 0.0;   // A-qubit z magnetization
  double sB = 0.0;  // B-qubit z magnetization
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  static XState bell(double c1, double c2, double c3) { return {0.0, 0.0, c1, c2, c3}; }

  bool is_bell_diagonal() const { return r == 0.0 && sB == 0.0; }
  std::array<double, 3> correlations() const { return {c1, c2, c3}; }

  friend bool operator==(const XState&, const XState&) = default;
};

struct CorrelationMatrix {
  std::array<double, 3> c{};
  double hs_norm_sq = 0.0;   // c1^2 + c2^2 + c3^2
  double op_norm_sq = 0.0;   // max c_i^2
  double determinant = 0.0;  // c1 c2 c3
  int argmax_index = 1;      // 1-based index of the largest |c_i|, ties toward the smaller index

  static CorrelationMatrix from(double c1, double c2, double c3);
  static CorrelationMatrix from(const XState& s) { return from(s.c1, s.c2, s.c3); }

  double max_abs() const;
};

struct XEigenStructure {
  // lambda[0..1] belong to the inner block, lambda[2..3] to the outer block,
  // larger first within each block.
  std::array<double, 4> lambda{};
  // Eigenvectors of the inner block are proportional to x|01> + |10>, those of
  // the outer block to y|00> + |11>. When the off-diagonal element vanishes the
  // pair is (+-inf, 0) by the limit convention.
  double x1 = 0.0, x2 = 0.0;
  double y1 = 0.0, y2 = 0.0;
  bool degenerate_inner = false;  // c1 + c2 == 0
  bool degenerate_outer = false;  // c1 - c2 == 0
};

struct Violation {
  std::string name;
  double magnitude = 0.0;
};

// Lowest eigenvalue allowed for a state; absorbs rounding from channel maps.
inline constexpr double kPsdTolerance = 1e-12;
// Threshold below which a block off-diagonal counts as zero.
inline constexpr double kDegenerateOffDiagonal = 1e-14;

Matrix4 to_density_matrix(const XState& s);

// Spectrum of a general two-qubit density matrix. Throws InvalidState unless rho
// is Hermitian (1e-12), has unit trace (1e-10) and no eigenvalue below -1e-10.
EigenDecomposition<4> checked_spectrum(const Matrix4& rho);

// Empty iff the state is a valid density matrix.
std::vector<Violation> validate(const XState& s);

// Throws NotXShaped when any entry outside the diagonal/anti-diagonal, or any
// imaginary part of the anti-diagonal, exceeds tol.
XState from_density_matrix(const Matrix4& rho, double tol = 1e-12);

// Analytic eigenvalues of both blocks, unsorted across blocks.
std::array<double, 4> x_block_eigenvalues(const XState& s);

// Throws InvalidState when validate(s) is non-empty.
XEigenStructure x_eigensystem(const XState& s);

// "r,s,c1,c2,c3" or the Bell-diagonal shorthand "c1,c2,c3". Throws ParseError.
XState parse_state(std::string_view text);

std::string describe(const XState& s);

}  // namespace xip
