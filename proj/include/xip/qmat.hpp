#pragma once

// Small dense complex matrices (2x2 and 4x4 operators on qubits, plus 3x3 for the
// probe-response matrix) and a cyclic Jacobi eigensolver for Hermitian input.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace xip {

using Complex = std::complex<double>;

enum class Qubit { A, B };

template <std::size_t N>
using Vector = std::array<Complex, N>;

template <std::size_t N>
class Matrix {
  static_assert(N >= 2 && N <= 4, "only 2x2, 3x3 and 4x4 operators are supported");

 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() : a_{} {}

  // Row-major initializer; missing trailing entries are zero.
  Matrix(std::initializer_list<Complex> rows) : a_{} {
    std::size_t k = 0;
    for (const auto& v : rows) {
      if (k == N * N) break;
      a_[k++] = v;
    }
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * N + j]; }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend Vector<N> operator*(const Matrix& a, const Vector<N>& v) {
    Vector<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  Vector<N> column(std::size_t j) const {
    Vector<N> v{};
    for (std::size_t i = 0; i < N; ++i) v[i] = (*this)(i, j);
    return v;
  }

 private:
  std::array<Complex, N * N> a_;
};

using Matrix2 = Matrix<2>;
using Matrix3 = Matrix<3>;
using Matrix4 = Matrix<4>;

// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

template <std::size_t N>
double hermiticity_error(const Matrix<N>& a) {
  return max_abs_diff(a, a.adjoint());
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& a, double tol = 1e-12) {
  return hermiticity_error(a) <= tol;
}

namespace pauli {
inline Matrix2 id() { return Matrix2::identity(); }
inline Matrix2 x() { return Matrix2{0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 y() { return Matrix2{0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
inline Matrix2 z() { return Matrix2{1.0, 0.0, 0.0, -1.0}; }
// sigma_k for k = 1, 2, 3.
Matrix2 sigma(int k);
}  // namespace pauli

// Kronecker product with A_{00} B in the top-left block.
Matrix4 kron2(const Matrix2& a, const Matrix2& b);

template <std::size_t N>
Matrix<N> sandwich(const Matrix<N>& k, const Matrix<N>& rho) {
  return k * rho * k.adjoint();
}

template <std::size_t N>
Complex matrix_element(const Vector<N>& psi, const Matrix<N>& a, const Vector<N>& phi) {
  const Vector<N> aphi = a * phi;
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(psi[i]) * aphi[i];
  return s;
}

template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};  // descending
  Matrix<N> vectors;               // column j pairs with values[j]

  Vector<N> vector(std::size_t j) const { return vectors.column(j); }
};

struct JacobiOptions {
  double tolerance = 1e-13;  // target for the off-diagonal Frobenius norm
  int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws NotHermitian when max|A - A^H| > 1e-12 and
// NoConvergence when the sweep budget is exhausted.
template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N>& a, const JacobiOptions& opts = {});

template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N>& a, double tol) {
  return hermitian_eigen(a, JacobiOptions{tol, 100});
}

extern template EigenDecomposition<2> hermitian_eigen(const Matrix<2>&, const JacobiOptions&);
extern template EigenDecomposition<3> hermitian_eigen(const Matrix<3>&, const JacobiOptions&);
extern template EigenDecomposition<4> hermitian_eigen(const Matrix<4>&, const JacobiOptions&);

}  // namespace xip
