#pragma once

/// Stationary smoothers used inside the V-cycle: damped Jacobi and a
/// diagonally preconditioned Chebyshev polynomial smoother on the interval
/// [lambda_max / eig_ratio, 1.1 * lambda_max].

#include <stdexcept>
#include <vector>

#include <matamg/sparse_matrix.hpp>

namespace matamg {

namespace detail {

inline std::vector<double> residual(const SparseMatrix& A,
                                    const std::vector<double>& b,
                                    const std::vector<double>& x) {
  std::vector<double> r = spmv(A, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

}  // namespace detail

/// x <- x + omega * D^{-1} (b - A x), `sweeps` times.
inline void jacobi_smooth(const SparseMatrix& A, const std::vector<double>& D,
                          const std::vector<double>& b, std::vector<double>& x,
                          int sweeps, double omega) {
  if (D.size() != static_cast<std::size_t>(A.n_rows) || b.size() != D.size() ||
      x.size() != D.size())
    throw std::invalid_argument("jacobi_smooth: dimension mismatch");
  for (double d : D)
    if (d == 0.0)
      throw std::invalid_argument("jacobi_smooth: zero diagonal entry");
  for (int s = 0; s < sweeps; ++s) {
    const std::vector<double> r = detail::residual(A, b, x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += omega * r[i] / D[i];
  }
}

/// Chebyshev polynomial smoother of the given degree for D^{-1} A with
/// spectrum estimate lambda_max, targeting [lambda_max/eig_ratio,
/// 1.1*lambda_max].  Degree d applies d matrix-vector products; the zero
/// residual is a fixed point.
inline void chebyshev_smooth(const SparseMatrix& A, const std::vector<double>& D,
                             const std::vector<double>& b,
                             std::vector<double>& x, int degree,
                             double lambda_max, double eig_ratio) {
  if (D.size() != static_cast<std::size_t>(A.n_rows) || b.size() != D.size() ||
      x.size() != D.size())
    throw std::invalid_argument("chebyshev_smooth: dimension mismatch");
  if (degree < 1) return;
  if (!(lambda_max > 0.0))
    throw std::invalid_argument(
        "chebyshev_smooth: positive eigenvalue estimate required");
  if (!(eig_ratio > 1.0))
    throw std::invalid_argument("chebyshev_smooth: eig_ratio must exceed 1");
  for (double d : D)
    if (d == 0.0)
      throw std::invalid_argument("chebyshev_smooth: zero diagonal entry");
  const double upper = 1.1 * lambda_max;
  const double lower = lambda_max / eig_ratio;
  const double center = 0.5 * (upper + lower);
  const double halfwidth = 0.5 * (upper - lower);
  const double sigma1 = center / halfwidth;
  const std::size_t n = x.size();
  std::vector<double> r = detail::residual(A, b, x);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = r[i] / (D[i] * center);
  for (std::size_t i = 0; i < n; ++i) x[i] += d[i];
  double rho = 1.0 / sigma1;
  for (int k = 1; k < degree; ++k) {
    r = detail::residual(A, b, x);
    const double rho_next = 1.0 / (2.0 * sigma1 - rho);
    for (std::size_t i = 0; i < n; ++i)
      d[i] = rho_next * rho * d[i] +
             (2.0 * rho_next / halfwidth) * r[i] / D[i];
    for (std::size_t i = 0; i < n; ++i) x[i] += d[i];
    rho = rho_next;
  }
}

}  // namespace matamg
