#pragma once

/// Dropping criteria over a strength matrix (pointwise threshold and the
/// per-row cut-drop gap rule) and the filtered operator they induce: dropped
/// off-diagonals are lumped onto the diagonal so row sums are preserved.
/// The filtered operator keeps the source pattern, storing explicit zeros at
/// dropped positions; this keeps the smoothed-prolongator pattern and the
/// resulting complexity accounting deterministic.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <matamg/sparse_matrix.hpp>
#include <matamg/strength.hpp>

namespace matamg {

enum class DropKind { pointwise, cutdrop };

inline const char* to_string(DropKind k) {
  return k == DropKind::pointwise ? "pointwise" : "cutdrop";
}

/// Keep/drop decision per stored entry of the strength matrix it was built
/// from (parallel to that matrix's values array).  Diagonals are always kept.
struct DropMask {
  index_t n_rows = 0;
  double theta = 0.0;
  DropKind kind = DropKind::pointwise;
  std::vector<std::uint8_t> keep;

  index_t kept() const {
    index_t c = 0;
    for (std::uint8_t k : keep) c += k;
    return c;
  }
};

namespace detail {

inline void check_theta(double theta, const char* where) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument(std::string(where) +
                                ": theta must lie in [0, 1], got " +
                                std::to_string(theta));
}

}  // namespace detail

/// Keep every entry with |S_ij| >= theta (theta = 0 keeps everything).
inline DropMask drop_pointwise(const SocMatrix& soc, double theta) {
  detail::check_theta(theta, "drop_pointwise");
  const SparseMatrix& S = soc.S;
  DropMask mask;
  mask.n_rows = S.n_rows;
  mask.theta = theta;
  mask.kind = DropKind::pointwise;
  mask.keep.assign(S.values.size(), 0);
  for (index_t i = 0; i < S.n_rows; ++i) {
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      mask.keep[k] =
          S.col_indices[k] == i || std::abs(S.values[k]) >= theta ? 1 : 0;
    }
  }
  return mask;
}

/// Per-row gap rule: sort the row's off-diagonal strengths descending (ties
/// by ascending column), find the smallest k with theta*s(k) >= s(k+1), and
/// keep entries with |S_ij| >= s(k).  Rows without a qualifying gap keep all
/// entries; theta = 0 keeps everything.
inline DropMask drop_cutdrop(const SocMatrix& soc, double theta) {
  detail::check_theta(theta, "drop_cutdrop");
  const SparseMatrix& S = soc.S;
  DropMask mask;
  mask.n_rows = S.n_rows;
  mask.theta = theta;
  mask.kind = DropKind::cutdrop;
  mask.keep.assign(S.values.size(), 1);
  if (theta == 0.0) return mask;  // no dropping
  struct OffEntry {
    double strength;
    index_t col;
  };
  std::vector<OffEntry> row;
  for (index_t i = 0; i < S.n_rows; ++i) {
    row.clear();
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      if (S.col_indices[k] != i)
        row.push_back({std::abs(S.values[k]), S.col_indices[k]});
    }
    if (row.size() < 2) continue;  // nothing to separate
    std::sort(row.begin(), row.end(), [](const OffEntry& a, const OffEntry& b) {
      return a.strength != b.strength ? a.strength > b.strength
                                      : a.col < b.col;
    });
    double cutoff = -1.0;
    for (std::size_t k = 0; k + 1 < row.size(); ++k) {
      if (theta * row[k].strength >= row[k + 1].strength) {
        cutoff = row[k].strength;
        break;
      }
    }
    if (cutoff < 0.0) continue;  // no gap: keep the whole row
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      if (S.col_indices[k] == i) continue;
      if (std::abs(S.values[k]) < cutoff) mask.keep[k] = 0;
    }
  }
  return mask;
}

inline DropMask drop(const SocMatrix& soc, DropKind kind, double theta) {
  return kind == DropKind::pointwise ? drop_pointwise(soc, theta)
                                     : drop_cutdrop(soc, theta);
}

/// Filtered operator: kept entries copied, dropped off-diagonals zeroed in
/// place and lumped onto the diagonal (row sums unchanged).
inline SparseMatrix filter_matrix(const SparseMatrix& A, const DropMask& mask) {
  if (mask.n_rows != A.n_rows || mask.keep.size() != A.values.size())
    throw std::invalid_argument(
        "filter_matrix: mask does not match the operator pattern");
  SparseMatrix F = A;
  for (index_t i = 0; i < A.n_rows; ++i) {
    double lumped = 0.0;
    index_t diag_k = -1;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      if (A.col_indices[k] == i) {
        diag_k = k;
        continue;
      }
      if (!mask.keep[k]) {
        lumped += A.values[k];
        F.values[k] = 0.0;
      }
    }
    if (lumped != 0.0) {
      if (diag_k < 0)
        throw std::invalid_argument(
            "filter_matrix: row " + std::to_string(i) +
            " has dropped entries but no stored diagonal to lump onto");
      F.values[diag_k] += lumped;
    }
  }
  return F;
}

/// Row-wise 1-norm diagonal: d_i = sum_j |A_ij|.  Rows with an all-zero
/// 1-norm get 1.0 so the diagonal stays invertible; their indices are
/// reported through `flagged` when given.
inline std::vector<double> one_norm_diagonal(
    const SparseMatrix& A, std::vector<index_t>* flagged = nullptr) {
  std::vector<double> d(static_cast<std::size_t>(A.n_rows), 0.0);
  for (index_t i = 0; i < A.n_rows; ++i) {
    double s = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      s += std::abs(A.values[k]);
    if (s == 0.0) {
      if (flagged) flagged->push_back(i);
      s = 1.0;
    }
    d[i] = s;
  }
  return d;
}

}  // namespace matamg
