#pragma once

// Dense reference implementations used only by the test suite.  Everything
// here goes through Eigen so the library code under test never checks
// against itself.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include <matamg/sparse_matrix.hpp>

namespace oracles {

inline Eigen::MatrixXd to_dense(const matamg::SparseMatrix& A) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(A.n_rows, A.n_cols);
  for (matamg::index_t i = 0; i < A.n_rows; ++i)
    for (matamg::index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      M(i, A.col_indices[k]) += A.values[k];
  return M;
}

inline double max_abs(const Eigen::MatrixXd& M) {
  return M.cwiseAbs().maxCoeff();
}

/// Largest eigenvalue of D^{-1} A for SPD A and positive diagonal D,
/// via the symmetric generalized eigenproblem A v = lambda D v.
inline double dominant_eigenvalue(const matamg::SparseMatrix& A,
                                  const std::vector<double>& D) {
  const Eigen::MatrixXd M = to_dense(A);
  Eigen::MatrixXd Dm = Eigen::MatrixXd::Zero(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i) Dm(i, i) = D[i];
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Dm);
  return es.eigenvalues().maxCoeff();
}

/// Deterministic dense SPD test matrix with moderate conditioning.
inline Eigen::MatrixXd random_spd(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = uni(gen);
  return B.transpose() * B + static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n);
}

inline matamg::SparseMatrix from_dense(const Eigen::MatrixXd& M,
                                       double drop_below = 0.0) {
  matamg::CooBuilder coo;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (std::abs(M(i, j)) > drop_below || i == j)
        coo.add(i, j, M(i, j));
  return coo.build(M.rows(), M.cols());
}

inline std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = uni(gen);
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Energy (A-norm squared) of a vector.
inline double energy(const matamg::SparseMatrix& A,
                     const std::vector<double>& e) {
  return dot(e, matamg::spmv(A, e));
}

}  // namespace oracles
