#include "xip/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xip/errors.hpp"

namespace xip {

namespace pauli {
Matrix2 sigma(int k) {
  switch (k) {
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw ParamOutOfRange("Pauli index must be 1, 2 or 3, got " + std::to_string(k));
  }
}
}  // namespace pauli

Matrix4 kron2(const Matrix2& a, const Matrix2& b) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

namespace {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One rotation zeroing a(p, q). The unitary is J = D R with D = diag(1, .., e^{-i phi}
// at q, ..) making a(p, q) real, followed by the real Jacobi rotation R.
template <std::size_t N>
void rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex phase = std::conj(apq) / g;  // e^{-i phi}

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase;
  const Complex jqq = c * phase;

  // a <- a J
  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  // a <- J^H a
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace

template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N>& input, const JacobiOptions& opts) {
  if (!(opts.tolerance > 0.0)) throw ParamOutOfRange("Jacobi tolerance must be positive");
  const double herr = hermiticity_error(input);
  if (!(herr <= 1e-12)) {
    throw NotHermitian("matrix is not Hermitian (max |A - A^H| = " + std::to_string(herr) + ")");
  }

  // Symmetrize so rounding in the input cannot bias the rotations.
  Matrix<N> a = 0.5 * (input + input.adjoint());
  Matrix<N> v = Matrix<N>::identity();

  bool converged = off_diagonal_norm(a) <= opts.tolerance;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= opts.tolerance;
  }
  if (!converged) {
    throw NoConvergence("Jacobi eigensolver did not converge within " +
                        std::to_string(opts.max_sweeps) + " sweeps");
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenDecomposition<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template EigenDecomposition<2> hermitian_eigen(const Matrix<2>&, const JacobiOptions&);
template EigenDecomposition<3> hermitian_eigen(const Matrix<3>&, const JacobiOptions&);
template EigenDecomposition<4> hermitian_eigen(const Matrix<4>&, const JacobiOptions&);

}  // namespace xip
