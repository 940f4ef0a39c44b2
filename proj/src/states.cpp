#include "xip/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xip/csv.hpp"
#include "xip/errors.hpp"

namespace xip {

CorrelationMatrix CorrelationMatrix::from(double c1, double c2, double c3) {
  CorrelationMatrix m;
  m.c = {c1, c2, c3};
  m.hs_norm_sq = c1 * c1 + c2 * c2 + c3 * c3;
  m.op_norm_sq = std::max({c1 * c1, c2 * c2, c3 * c3});
  m.determinant = c1 * c2 * c3;
  m.argmax_index = 1;
  for (int k = 2; k <= 3; ++k)
    if (std::abs(m.c[k - 1]) > std::abs(m.c[m.argmax_index - 1])) m.argmax_index = k;
  return m;
}

double CorrelationMatrix::max_abs() const {
  return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
}

Matrix4 to_density_matrix(const XState& s) {
  Matrix4 rho;
  rho(0, 0) = (1.0 + s.r + s.sB + s.c3) / 4.0;
  rho(1, 1) = (1.0 + s.r - s.sB - s.c3) / 4.0;
  rho(2, 2) = (1.0 - s.r + s.sB - s.c3) / 4.0;
  rho(3, 3) = (1.0 - s.r - s.sB + s.c3) / 4.0;
  rho(0, 3) = rho(3, 0) = (s.c1 - s.c2) / 4.0;
  rho(1, 2) = rho(2, 1) = (s.c1 + s.c2) / 4.0;
  return rho;
}

EigenDecomposition<4> checked_spectrum(const Matrix4& rho) {
  const double herr = hermiticity_error(rho);
  if (!(herr <= 1e-12)) throw InvalidState("density matrix is not Hermitian (" + format_number(herr) + ")");
  const double tr_err = std::abs(rho.trace() - 1.0);
  if (!(tr_err <= 1e-10)) {
    throw InvalidState("density matrix trace differs from one by " + format_number(tr_err));
  }
  auto eig = hermitian_eigen(rho);
  if (eig.values[3] < -1e-10) {
    throw InvalidState("density matrix has a negative eigenvalue " + format_number(eig.values[3]));
  }
  return eig;
}

namespace {

struct Block {
  double a, d, b;  // [[a, b], [b, d]]
};

Block inner_block(const XState& s) {
  return {(1.0 + s.r - s.sB - s.c3) / 4.0, (1.0 - s.r + s.sB - s.c3) / 4.0, (s.c1 + s.c2) / 4.0};
}

Block outer_block(const XState& s) {
  return {(1.0 + s.r + s.sB + s.c3) / 4.0, (1.0 - s.r - s.sB + s.c3) / 4.0, (s.c1 - s.c2) / 4.0};
}

struct BlockEigen {
  double hi, lo;        // eigenvalues, hi >= lo
  double v_hi, v_lo;    // eigenvector ratio v for v|first> + |second>
  bool degenerate;
};

// For [[a, b], [b, d]] an eigenvector of lambda is (v, 1) with v = (lambda - d) / b.
// The two ratios satisfy v_hi v_lo = -1, so the one prone to cancellation is
// taken from that product.
BlockEigen solve_block(const Block& blk) {
  const double mean = 0.5 * (blk.a + blk.d);
  const double half = 0.5 * (blk.a - blk.d);
  const double rad = std::hypot(half, blk.b);
  BlockEigen e{mean + rad, mean - rad, 0.0, 0.0, std::abs(blk.b) < kDegenerateOffDiagonal};
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (e.degenerate) {
    if (blk.a >= blk.d) {
      e.v_hi = inf;
      e.v_lo = 0.0;
    } else {
      e.v_hi = 0.0;
      e.v_lo = inf;
    }
    return e;
  }
  if (half >= 0.0) {
    e.v_hi = (half + rad) / blk.b;
    e.v_lo = -1.0 / e.v_hi;
  } else {
    e.v_lo = (half - rad) / blk.b;
    e.v_hi = -1.0 / e.v_lo;
  }
  return e;
}

}  // namespace

std::array<double, 4> x_block_eigenvalues(const XState& s) {
  const auto in = solve_block(inner_block(s));
  const auto out = solve_block(outer_block(s));
  return {in.hi, in.lo, out.hi, out.lo};
}

std::vector<Violation> validate(const XState& s) {
  std::vector<Violation> v;
  for (double x : {s.r, s.sB, s.c1, s.c2, s.c3}) {
    if (!std::isfinite(x)) {
      v.push_back({"non-finite parameter", std::numeric_limits<double>::quiet_NaN()});
      return v;
    }
  }
  const auto lambda = x_block_eigenvalues(s);
  const double lowest = *std::min_element(lambda.begin(), lambda.end());
  if (lowest < -kPsdTolerance) v.push_back({"negative eigenvalue", lowest});
  // The parameterization is trace one by construction; the check guards the
  // arithmetic of the eigenvalue sum only.
  const double tr = lambda[0] + lambda[1] + lambda[2] + lambda[3];
  if (std::abs(tr - 1.0) > 1e-12) v.push_back({"trace not one", tr - 1.0});
  return v;
}

XState from_density_matrix(const Matrix4& rho, double tol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j && i + j != 3) worst = std::max(worst, std::abs(rho(i, j)));
  for (auto [i, j] : {std::pair{0, 3}, std::pair{1, 2}, std::pair{3, 0}, std::pair{2, 1}})
    worst = std::max(worst, std::abs(rho(i, j).imag()));
  if (worst > tol) {
    throw NotXShaped("matrix is not X shaped (largest forbidden entry " + format_number(worst) + ")");
  }
  const double p00 = rho(0, 0).real(), p01 = rho(1, 1).real();
  const double p10 = rho(2, 2).real(), p11 = rho(3, 3).real();
  const double outer = 0.5 * (rho(0, 3).real() + rho(3, 0).real());
  const double inner = 0.5 * (rho(1, 2).real() + rho(2, 1).real());
  XState s;
  s.r = p00 + p01 - p10 - p11;
  s.sB = p00 - p01 + p10 - p11;
  s.c3 = p00 - p01 - p10 + p11;
  s.c1 = 2.0 * (inner + outer);
  s.c2 = 2.0 * (inner - outer);
  return s;
}

XEigenStructure x_eigensystem(const XState& s) {
  const auto violations = validate(s);
  if (!violations.empty()) {
    throw InvalidState("not a valid X state (" + violations.front().name + " " +
                       format_number(violations.front().magnitude) + ")");
  }
  const auto in = solve_block(inner_block(s));
  const auto out = solve_block(outer_block(s));
  XEigenStructure e;
  e.lambda = {in.hi, in.lo, out.hi, out.lo};
  e.x1 = in.v_hi;
  e.x2 = in.v_lo;
  e.y1 = out.v_hi;
  e.y2 = out.v_lo;
  e.degenerate_inner = in.degenerate;
  e.degenerate_outer = out.degenerate;
  return e;
}

XState parse_state(std::string_view text) {
  const auto fields = split_fields(text, ',');
  if (fields.size() != 3 && fields.size() != 5) {
    throw ParseError("state literal needs 3 (c1,c2,c3) or 5 (r,s,c1,c2,c3) numbers: '" +
                     std::string(text) + "'");
  }
  std::vector<double> v;
  for (const auto& f : fields) {
    const auto d = parse_double(f);
    if (!d) throw ParseError("cannot parse number '" + f + "' in state literal");
    v.push_back(*d);
  }
  if (v.size() == 3) return XState::bell(v[0], v[1], v[2]);
  return {v[0], v[1], v[2], v[3], v[4]};
}

std::string describe(const XState& s) {
  return "r=" + format_number(s.r) + " s=" + format_number(s.sB) + " c1=" + format_number(s.c1) +
         " c2=" + format_number(s.c2) + " c3=" + format_number(s.c3);
}

}  // namespace xip
