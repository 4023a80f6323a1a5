#pragma once

/// Multigrid setup: per-level spectral-radius estimation, prolongator
/// smoothing against the filtered operator, and the level loop that couples
/// strength, dropping, aggregation, Galerkin coarsening and the auxiliary
/// (coordinate/tensor) transfer.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <matamg/aggregation.hpp>
#include <matamg/coarse_solve.hpp>
#include <matamg/fem.hpp>
#include <matamg/filtering.hpp>
#include <matamg/sparse_matrix.hpp>
#include <matamg/strength.hpp>

namespace matamg {

struct AmgConfig {
  SocKind soc_kind = SocKind::material_dlap;
  DropKind drop_kind = DropKind::pointwise;
  double theta = 0.08;
  int max_levels = 10;
  index_t max_coarse_size = 5000;
  double omega_sym = 4.0 / 3.0;   ///< prolongator damping numerator
  int power_iterations = 10;
  int chebyshev_degree = 2;
  double chebyshev_eig_ratio = 20.0;
};

/// One level of the hierarchy.  Setup byproducts (strength, mask, aggregates,
/// transfer) are kept for inspection and export; the coarsest level carries
/// only the operator, auxiliary data and smoother estimate.
struct Level {
  SparseMatrix A;
  AuxiliaryData aux;
  std::vector<double> diagonal;    ///< diag(A), used by the level smoother
  double smoother_lambda = 0.0;    ///< power estimate of rho(diag(A)^{-1} A)
  bool has_transfer = false;
  SparseMatrix P;                  ///< prolongator towards this level's coarse
  SocMatrix soc;
  DropMask mask;
  Aggregation aggregates;
};

struct Hierarchy {
  AmgConfig config;
  std::vector<Level> levels;
  DenseLu coarse_factor;  ///< factorization of the coarsest operator
  bool stagnated = false; ///< aggregation stopped making progress
};

/// Certified upper bound on rho(D^{-1} A): the infinity norm
/// max_i sum_j |a_ij| / |d_i|.  Used for the level smoothers, where an
/// eigenvalue interval that misses the top of the spectrum would turn the
/// Chebyshev polynomial into an amplifier and break positive definiteness
/// of the V-cycle.
inline double scaled_infinity_norm(const SparseMatrix& A,
                                   const std::vector<double>& D) {
  if (A.n_rows != A.n_cols)
    throw std::invalid_argument("scaled_infinity_norm: square required");
  if (D.size() != static_cast<std::size_t>(A.n_rows))
    throw std::invalid_argument("scaled_infinity_norm: diagonal mismatch");
  double bound = 0.0;
  for (index_t i = 0; i < A.n_rows; ++i) {
    if (D[i] == 0.0)
      throw std::invalid_argument("scaled_infinity_norm: zero diagonal entry");
    double row = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      row += std::abs(A.values[k]);
    bound = std::max(bound, row / std::abs(D[i]));
  }
  return bound;
}

/// Power-method estimate of rho(D^{-1} A) with a deterministic all-ones
/// start vector, returning the final Rayleigh quotient.  Returns 0 when the
/// iterate collapses (caller treats non-positive estimates as "skip").
inline double estimate_spectral_radius(const SparseMatrix& A,
                                       const std::vector<double>& D,
                                       int iterations) {
  if (A.n_rows != A.n_cols)
    throw std::invalid_argument("estimate_spectral_radius: square required");
  if (D.size() != static_cast<std::size_t>(A.n_rows))
    throw std::invalid_argument("estimate_spectral_radius: diagonal mismatch");
  const std::size_t n = static_cast<std::size_t>(A.n_rows);
  if (n == 0) return 0.0;
  for (double d : D)
    if (d == 0.0)
      throw std::invalid_argument(
          "estimate_spectral_radius: zero diagonal entry");
  std::vector<double> q(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> z = spmv(A, q);
    for (std::size_t i = 0; i < n; ++i) z[i] /= D[i];
    double rayleigh = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rayleigh += q[i] * z[i];
      norm2 += z[i] * z[i];
    }
    lambda = rayleigh;
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) q[i] = z[i] / norm;
  }
  return lambda;
}

/// P = (I - omega D^{-1} A_F) P_hat with omega = omega_sym / lambda; a
/// non-positive lambda estimate skips smoothing and returns the tentative
/// prolongator unchanged.
inline SparseMatrix smooth_prolongator(const SparseMatrix& A_F,
                                       const std::vector<double>& D,
                                       const SparseMatrix& P_hat,
                                       double omega_sym, double lambda) {
  if (A_F.n_rows != A_F.n_cols || A_F.n_cols != P_hat.n_rows)
    throw std::invalid_argument("smooth_prolongator: dimension mismatch");
  if (D.size() != static_cast<std::size_t>(A_F.n_rows))
    throw std::invalid_argument("smooth_prolongator: diagonal mismatch");
  if (!(lambda > 0.0) || omega_sym == 0.0) return P_hat;
  const double omega = omega_sym / lambda;
  SparseMatrix M = multiply(A_F, P_hat);
  for (index_t i = 0; i < M.n_rows; ++i) {
    const double scale = omega / D[i];
    for (index_t k = M.row_offsets[i]; k < M.row_offsets[i + 1]; ++k)
      M.values[k] *= scale;
  }
  return add(P_hat, M, 1.0, -1.0);
}

/// Builds the level hierarchy from an operator plus auxiliary data.  Levels
/// are added until the operator is at most max_coarse_size rows, max_levels
/// is reached, or aggregation stagnates (all singletons), in which case the
/// hierarchy is truncated at the current level and flagged.
inline Hierarchy build_hierarchy(SparseMatrix A_fine, AuxiliaryData aux_fine,
                                 const AmgConfig& config) {
  if (config.max_levels < 1)
    throw std::invalid_argument("build_hierarchy: max_levels must be >= 1");
  if (config.max_coarse_size < 1)
    throw std::invalid_argument(
        "build_hierarchy: max_coarse_size must be >= 1");
  if (A_fine.n_rows != A_fine.n_cols)
    throw std::invalid_argument("build_hierarchy: square operator required");
  Hierarchy h;
  h.config = config;
  SparseMatrix A = std::move(A_fine);
  AuxiliaryData aux = std::move(aux_fine);
  for (int level = 1;; ++level) {
    Level L;
    L.A = std::move(A);
    L.aux = std::move(aux);
    L.diagonal = extract_diagonal(L.A);
    for (index_t i = 0; i < L.A.n_rows; ++i)
      if (L.diagonal[i] == 0.0)
        throw std::invalid_argument(
            "build_hierarchy: operator on level " + std::to_string(level) +
            " has a zero diagonal at row " + std::to_string(i));
    L.smoother_lambda = scaled_infinity_norm(L.A, L.diagonal);
    h.levels.push_back(std::move(L));
    Level& cur = h.levels.back();
    const index_t n = cur.A.n_rows;
    if (n <= config.max_coarse_size || level == config.max_levels) break;
    cur.soc = build_soc(cur.A, cur.aux, config.soc_kind);
    cur.mask = drop(cur.soc, config.drop_kind, config.theta);
    cur.aggregates = aggregate(cur.soc, cur.mask);
    if (cur.aggregates.n_aggregates == 0) break;  // nothing left to coarsen
    if (cur.aggregates.n_aggregates == n) {       // all singletons: no progress
      h.stagnated = true;
      break;
    }
    const SparseMatrix P_hat = tentative_prolongator(cur.aggregates);
    const SparseMatrix A_F = filter_matrix(cur.A, cur.mask);
    const std::vector<double> D_F = one_norm_diagonal(A_F);
    const double lambda_F =
        estimate_spectral_radius(A_F, D_F, config.power_iterations);
    cur.P = smooth_prolongator(A_F, D_F, P_hat, config.omega_sym, lambda_F);
    cur.has_transfer = true;
    A = galerkin_product(cur.P, cur.A);
    aux = coarsen_auxiliary(cur.aggregates, cur.aux);
  }
  h.coarse_factor = DenseLu::factor(h.levels.back().A);
  return h;
}

inline Hierarchy build_hierarchy(const AssembledProblem& problem,
                                 const AmgConfig& config) {
  return build_hierarchy(problem.A,
                         AuxiliaryData{problem.coords, problem.node_materials},
                         config);
}

/// Sum of stored entries over all levels divided by the finest level's.
inline double operator_complexity(const Hierarchy& h) {
  if (h.levels.empty()) return 0.0;
  double total = 0.0;
  for (const Level& l : h.levels) total += static_cast<double>(l.A.nnz());
  return total / static_cast<double>(h.levels.front().A.nnz());
}

}  // namespace matamg
