#pragma once

/// Preconditioned conjugate gradients with zero initial guess, a relative
/// (or absolute) residual stopping test, and breakdown detection for
/// non-SPD operators or preconditioners.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <matamg/sparse_matrix.hpp>

namespace matamg {

/// Thrown when CG encounters non-positive curvature or a non-positive
/// preconditioned inner product, i.e. the operator or preconditioner is not
/// symmetric positive definite.
struct BreakdownError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  double achieved_tolerance = 0.0;       ///< final ||r|| / ||r0||
  std::vector<double> residual_history;  ///< relative norms, length iters + 1
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) {
  return std::sqrt(dot(a, a));
}

}  // namespace detail

/// Solves A x = b from a zero initial guess; stops when ||r||_2 falls below
/// rel_tol * ||r_0||_2, or below abs_tol when abs_tol > 0 is given.
/// `precondition(r)` must apply a fixed symmetric positive definite operator.
template <class Precondition>
inline SolveReport pcg(const SparseMatrix& A, const std::vector<double>& b,
                       std::vector<double>& x, Precondition&& precondition,
                       double rel_tol, double abs_tol, int max_iterations) {
  if (A.n_rows != A.n_cols)
    throw std::invalid_argument("pcg: square operator required");
  if (b.size() != static_cast<std::size_t>(A.n_rows))
    throw std::invalid_argument("pcg: right-hand side size mismatch");
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0))
    throw std::invalid_argument("pcg: a positive tolerance is required");
  if (max_iterations < 0)
    throw std::invalid_argument("pcg: max_iterations must be non-negative");
  const std::size_t n = b.size();
  x.assign(n, 0.0);
  SolveReport report;
  std::vector<double> r = b;  // r = b - A*0
  const double r0_norm = detail::norm2(r);
  report.residual_history.push_back(1.0);
  if (r0_norm == 0.0) {
    report.converged = true;
    report.achieved_tolerance = 0.0;
    report.residual_history.back() = 0.0;
    return report;
  }
  const double threshold = abs_tol > 0.0 ? abs_tol : rel_tol * r0_norm;
  if (r0_norm <= threshold) {
    report.converged = true;
    report.achieved_tolerance = 1.0;
    return report;
  }
  std::vector<double> z = precondition(r);
  double rz = detail::dot(r, z);
  if (!(rz > 0.0))
    throw BreakdownError(
        "pcg: non-positive preconditioned inner product (preconditioner not "
        "SPD), r'z = " +
        std::to_string(rz));
  std::vector<double> p = z;
  for (int it = 1; it <= max_iterations; ++it) {
    const std::vector<double> Ap = spmv(A, p);
    const double pAp = detail::dot(p, Ap);
    if (!(pAp > 0.0))
      throw BreakdownError(
          "pcg: non-positive curvature (operator not SPD), p'Ap = " +
          std::to_string(pAp));
    const double alpha = rz / pAp;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
    const double r_norm = detail::norm2(r);
    report.iterations = it;
    report.residual_history.push_back(r_norm / r0_norm);
    if (r_norm <= threshold) {
      report.converged = true;
      break;
    }
    z = precondition(r);
    const double rz_next = detail::dot(r, z);
    if (!(rz_next > 0.0))
      throw BreakdownError(
          "pcg: non-positive preconditioned inner product (preconditioner "
          "not SPD), r'z = " +
          std::to_string(rz_next));
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  report.achieved_tolerance = report.residual_history.back();
  return report;
}

/// Unpreconditioned conjugate gradients.
inline SolveReport cg(const SparseMatrix& A, const std::vector<double>& b,
                      std::vector<double>& x, double rel_tol, double abs_tol,
                      int max_iterations) {
  return pcg(
      A, b, x, [](const std::vector<double>& r) { return r; }, rel_tol,
      abs_tol, max_iterations);
}

}  // namespace matamg
