#pragma once

/// Strength-of-connection measures on the sparsity pattern of an assembled
/// operator: the classical smoothed-aggregation measure, the distance
/// Laplacian, and the material-aware distance Laplacian built from a
/// tensor-weighted distance.  All measures share one output shape: same
/// pattern as the source operator, unit diagonal, non-negative off-diagonal
/// strengths.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <matamg/material_tensor.hpp>
#include <matamg/sparse_matrix.hpp>

namespace matamg {

enum class SocKind { sa, dlap, material_dlap };

inline const char* to_string(SocKind k) {
  switch (k) {
    case SocKind::sa: return "sa";
    case SocKind::dlap: return "dlap";
    case SocKind::material_dlap: return "material";
  }
  return "?";
}

/// Per-node geometric and material data carried through the hierarchy.
struct AuxiliaryData {
  std::vector<std::array<double, 3>> coords;
  std::vector<MaterialTensor> materials;
};

/// Strength matrix: same pattern as the source operator, diagonal 1, stored
/// off-diagonals hold the non-negative connection strength.
struct SocMatrix {
  SparseMatrix S;
  SocKind kind = SocKind::sa;
};

/// Classical measure S_ij = |A_ij| / sqrt(|A_ii| |A_jj|).
inline SocMatrix soc_sa(const SparseMatrix& A) {
  if (A.n_rows != A.n_cols)
    throw std::invalid_argument("soc_sa: square operator required");
  const std::vector<double> diag = extract_diagonal(A);
  for (index_t i = 0; i < A.n_rows; ++i)
    if (diag[i] == 0.0)
      throw std::invalid_argument("soc_sa: zero diagonal entry at row " +
                                  std::to_string(i));
  SocMatrix soc;
  soc.kind = SocKind::sa;
  soc.S = A;
  for (index_t i = 0; i < A.n_rows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t j = A.col_indices[k];
      soc.S.values[k] =
          i == j ? 1.0
                 : std::abs(A.values[k]) /
                       std::sqrt(std::abs(diag[i]) * std::abs(diag[j]));
    }
  }
  return soc;
}

/// Distance Laplacian on the pattern of A: L_ij = -1/d(i,j)^2 for stored
/// off-diagonals with nonzero value, L_ii = negated sum of the row's stored
/// off-diagonals (rows sum to zero by construction).  `metric(i, j)` must be
/// positive for every contributing pair.
template <class Metric>
inline SparseMatrix distance_laplacian(const SparseMatrix& A, Metric&& metric) {
  if (A.n_rows != A.n_cols)
    throw std::invalid_argument("distance_laplacian: square operator required");
  SparseMatrix L = A;
  for (index_t i = 0; i < A.n_rows; ++i) {
    double off_sum = 0.0;
    index_t diag_k = -1;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t j = A.col_indices[k];
      if (j == i) {
        diag_k = k;
        continue;
      }
      if (A.values[k] == 0.0) {
        L.values[k] = 0.0;  // pattern-only entry: no connection
        continue;
      }
      const double d = metric(i, j);
      if (!(d > 0.0))
        throw std::invalid_argument(
            "distance_laplacian: non-positive distance between nodes " +
            std::to_string(i) + " and " + std::to_string(j) +
            " (coincident points?)");
      L.values[k] = -1.0 / (d * d);
      off_sum += L.values[k];
    }
    if (diag_k < 0)
      throw std::invalid_argument(
          "distance_laplacian: row without stored diagonal: " +
          std::to_string(i));
    L.values[diag_k] = off_sum == 0.0 ? 0.0 : -off_sum;
  }
  return L;
}

/// Euclidean distance over the first three coordinates.
inline double euclidean_distance(const std::array<double, 3>& a,
                                 const std::array<double, 3>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace detail {

/// Shared Laplacian normalization: S_ij = |L_ij| / sqrt(L_ii L_jj), diag 1.
inline SocMatrix normalize_laplacian(SparseMatrix&& L, SocKind kind) {
  const std::vector<double> diag = extract_diagonal(L);
  SocMatrix soc;
  soc.kind = kind;
  soc.S = std::move(L);
  for (index_t i = 0; i < soc.S.n_rows; ++i) {
    for (index_t k = soc.S.row_offsets[i]; k < soc.S.row_offsets[i + 1]; ++k) {
      const index_t j = soc.S.col_indices[k];
      if (j == i) {
        soc.S.values[k] = 1.0;
        continue;
      }
      if (soc.S.values[k] == 0.0) continue;  // pattern-only entry
      const double dd = diag[i] * diag[j];
      if (!(dd > 0.0))
        throw std::invalid_argument(
            "strength normalization: non-positive Laplacian diagonal pair at "
            "rows " +
            std::to_string(i) + ", " + std::to_string(j));
      soc.S.values[k] = std::abs(soc.S.values[k]) / std::sqrt(dd);
    }
  }
  return soc;
}

inline void check_aux(const SparseMatrix& A, const AuxiliaryData& aux,
                      bool need_materials, const char* where) {
  if (aux.coords.size() != static_cast<std::size_t>(A.n_rows))
    throw std::invalid_argument(std::string(where) +
                                ": coordinates/operator size mismatch");
  if (need_materials &&
      aux.materials.size() != static_cast<std::size_t>(A.n_rows))
    throw std::invalid_argument(std::string(where) +
                                ": materials/operator size mismatch");
}

}  // namespace detail

/// Geometric distance-Laplacian measure.
inline SocMatrix soc_dlap(const SparseMatrix& A, const AuxiliaryData& aux) {
  detail::check_aux(A, aux, false, "soc_dlap");
  SparseMatrix L = distance_laplacian(A, [&](index_t i, index_t j) {
    return euclidean_distance(aux.coords[i], aux.coords[j]);
  });
  return detail::normalize_laplacian(std::move(L), SocKind::dlap);
}

/// Material-weighted distance between x_i and x_j: the larger of the two
/// endpoint-tensor norms sqrt((x_i-x_j)^T sigma^{-1} (x_i-x_j)), so the edge
/// is judged by its weaker endpoint.
inline double material_distance(const std::array<double, 3>& x_i,
                                const std::array<double, 3>& x_j,
                                const MaterialTensor& sigma_i,
                                const MaterialTensor& sigma_j) {
  const std::array<double, 3> d = {x_i[0] - x_j[0], x_i[1] - x_j[1],
                                   x_i[2] - x_j[2]};
  const double qi = sigma_i.inverse().quad_form(d);
  const double qj = sigma_j.inverse().quad_form(d);
  return std::sqrt(std::max(qi, qj));
}

/// Material-aware distance-Laplacian measure; tensor inverses are computed
/// once per node.
inline SocMatrix soc_material_dlap(const SparseMatrix& A,
                                   const AuxiliaryData& aux) {
  detail::check_aux(A, aux, true, "soc_material_dlap");
  std::vector<MaterialTensor> inv(aux.materials.size());
  for (std::size_t i = 0; i < aux.materials.size(); ++i) {
    if (!aux.materials[i].is_spd())
      throw std::invalid_argument(
          "soc_material_dlap: node tensor not SPD at node " +
          std::to_string(i));
    inv[i] = aux.materials[i].inverse();
  }
  SparseMatrix L = distance_laplacian(A, [&](index_t i, index_t j) {
    const std::array<double, 3> d = {aux.coords[i][0] - aux.coords[j][0],
                                     aux.coords[i][1] - aux.coords[j][1],
                                     aux.coords[i][2] - aux.coords[j][2]};
    return std::sqrt(std::max(inv[i].quad_form(d), inv[j].quad_form(d)));
  });
  return detail::normalize_laplacian(std::move(L), SocKind::material_dlap);
}

/// Dispatch helper used by the hierarchy builder and the CLI.
inline SocMatrix build_soc(const SparseMatrix& A, const AuxiliaryData& aux,
                           SocKind kind) {
  switch (kind) {
    case SocKind::sa: return soc_sa(A);
    case SocKind::dlap: return soc_dlap(A, aux);
    case SocKind::material_dlap: return soc_material_dlap(A, aux);
  }
  throw std::invalid_argument("build_soc: unknown strength kind");
}

}  // namespace matamg
