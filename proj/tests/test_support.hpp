#ifndef RELAYIA_TEST_SUPPORT_HPP
#define RELAYIA_TEST_SUPPORT_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>

// Test-side randomness and reference linear algebra. The reference routines
// deliberately avoid the SVD path the library uses: the pseudo-inverse goes
// through normal equations and Gauss-Jordan elimination so the two routes can
// check each other.
namespace test_support {

inline Eigen::MatrixXcd random_complex(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, M_SQRT1_2);
  Eigen::MatrixXcd out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = std::complex<double>(dist(gen), dist(gen));
  return out;
}

// Gauss-Jordan with partial pivoting.
inline Eigen::MatrixXcd gauss_jordan_inverse(Eigen::MatrixXcd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXcd inv = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    a.row(col).swap(a.row(pivot));
    inv.row(col).swap(inv.row(pivot));
    const std::complex<double> d = a(col, col);
    a.row(col) /= d;
    inv.row(col) /= d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::complex<double> f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

// Minimum-norm solution via H^H (H H^H)^-1 b.
inline Eigen::VectorXcd reference_least_norm(const Eigen::MatrixXcd& h,
                                             const Eigen::VectorXcd& b) {
  return h.adjoint() * (gauss_jordan_inverse(h * h.adjoint()) * b);
}

// Projection of z onto the null space of h: z - H^+ H z.
inline Eigen::VectorXcd reference_null_projection(const Eigen::MatrixXcd& h,
                                                  const Eigen::VectorXcd& z) {
  return z - h.adjoint() * (gauss_jordan_inverse(h * h.adjoint()) * (h * z));
}

// Random unitary via classical Gram-Schmidt on a generic square matrix.
inline Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  Eigen::MatrixXcd a = random_complex(n, n, seed);
  Eigen::MatrixXcd q(n, n);
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXcd v = a.col(c);
    for (int p = 0; p < c; ++p) v -= (q.col(p).adjoint() * a.col(c)).value() * q.col(p);
    q.col(c) = v / v.norm();
  }
  return q;
}

}  // namespace test_support

#endif
