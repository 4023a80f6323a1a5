#pragma once

/// Greedy three-phase aggregation over the kept (post-dropping) strength
/// graph, the piecewise-constant tentative prolongator it induces, and the
/// aggregate-averaged transfer of coordinates and material tensors to the
/// coarse level.  Identity rows (no stored off-diagonals at all, e.g.
/// eliminated Dirichlet rows) are excluded from aggregation entirely.

#include <stdexcept>
#include <vector>

#include <matamg/filtering.hpp>
#include <matamg/sparse_matrix.hpp>
#include <matamg/strength.hpp>

namespace matamg {

struct Aggregation {
  index_t n_nodes = 0;
  index_t n_aggregates = 0;
  std::vector<index_t> node_to_aggregate;  ///< -1 for excluded identity rows
  std::vector<index_t> roots;              ///< seed node per aggregate
};

/// Three deterministic phases over ascending node indices:
///   1. a node with no kept neighbor in any aggregate becomes a root and
///      absorbs all its currently unaggregated kept neighbors;
///   2. each remaining node joins the adjacent aggregate with the largest
///      connecting strength (ties: lowest aggregate index), judged against
///      the phase-1 state;
///   3. leftovers (kept neighbors all excluded, or none) become singletons.
inline Aggregation aggregate(const SocMatrix& soc, const DropMask& mask) {
  const SparseMatrix& S = soc.S;
  if (mask.n_rows != S.n_rows || mask.keep.size() != S.values.size())
    throw std::invalid_argument(
        "aggregate: mask does not match the strength pattern");
  const index_t n = S.n_rows;
  Aggregation agg;
  agg.n_nodes = n;
  agg.node_to_aggregate.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::uint8_t> excluded(static_cast<std::size_t>(n), 0);
  for (index_t i = 0; i < n; ++i) {
    bool has_off_diagonal = false;
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      if (S.col_indices[k] != i) {
        has_off_diagonal = true;
        break;
      }
    }
    excluded[i] = has_off_diagonal ? 0 : 1;
  }
  auto& node_agg = agg.node_to_aggregate;
  // Phase 1: roots and their free neighborhoods.
  for (index_t i = 0; i < n; ++i) {
    if (excluded[i] || node_agg[i] >= 0) continue;
    bool neighbor_aggregated = false;
    for (index_t k = S.row_offsets[i];
         k < S.row_offsets[i + 1] && !neighbor_aggregated; ++k) {
      const index_t j = S.col_indices[k];
      if (j != i && mask.keep[k] && node_agg[j] >= 0)
        neighbor_aggregated = true;
    }
    if (neighbor_aggregated) continue;
    const index_t a = agg.n_aggregates++;
    agg.roots.push_back(i);
    node_agg[i] = a;
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      const index_t j = S.col_indices[k];
      if (j != i && mask.keep[k] && !excluded[j] && node_agg[j] < 0)
        node_agg[j] = a;
    }
  }
  // Phase 2: attach to the strongest phase-1 neighbor aggregate.
  const std::vector<index_t> snapshot = node_agg;
  for (index_t i = 0; i < n; ++i) {
    if (excluded[i] || node_agg[i] >= 0) continue;
    index_t best_agg = -1;
    double best_strength = 0.0;
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      const index_t j = S.col_indices[k];
      if (j == i || !mask.keep[k]) continue;
      const index_t a = snapshot[j];
      if (a < 0) continue;
      const double s = S.values[k];
      if (best_agg < 0 || s > best_strength ||
          (s == best_strength && a < best_agg)) {
        best_agg = a;
        best_strength = s;
      }
    }
    if (best_agg >= 0) node_agg[i] = best_agg;
  }
  // Phase 3: singletons for whatever is left.
  for (index_t i = 0; i < n; ++i) {
    if (excluded[i] || node_agg[i] >= 0) continue;
    node_agg[i] = agg.n_aggregates++;
    agg.roots.push_back(i);
  }
  return agg;
}

/// Piecewise-constant tentative prolongator: row i carries a single 1.0 in
/// the column of node i's aggregate; excluded rows stay empty.
inline SparseMatrix tentative_prolongator(const Aggregation& agg) {
  SparseMatrix P;
  P.n_rows = agg.n_nodes;
  P.n_cols = agg.n_aggregates;
  P.row_offsets.assign(static_cast<std::size_t>(agg.n_nodes) + 1, 0);
  for (index_t i = 0; i < agg.n_nodes; ++i) {
    const index_t a = agg.node_to_aggregate[i];
    P.row_offsets[i + 1] = P.row_offsets[i] + (a >= 0 ? 1 : 0);
    if (a >= 0) {
      P.col_indices.push_back(a);
      P.values.push_back(1.0);
    }
  }
  return P;
}

/// Coarse-level coordinates and tensors: arithmetic means over each
/// aggregate's fine nodes.
inline AuxiliaryData coarsen_auxiliary(const Aggregation& agg,
                                       const AuxiliaryData& aux) {
  if (aux.coords.size() != static_cast<std::size_t>(agg.n_nodes))
    throw std::invalid_argument(
        "coarsen_auxiliary: coordinates/aggregation size mismatch");
  const bool with_materials = !aux.materials.empty();
  if (with_materials &&
      aux.materials.size() != static_cast<std::size_t>(agg.n_nodes))
    throw std::invalid_argument(
        "coarsen_auxiliary: materials/aggregation size mismatch");
  AuxiliaryData coarse;
  coarse.coords.assign(static_cast<std::size_t>(agg.n_aggregates),
                       {0.0, 0.0, 0.0});
  if (with_materials) {
    const int dim = aux.materials.front().dim;
    coarse.materials.assign(static_cast<std::size_t>(agg.n_aggregates),
                            MaterialTensor::isotropic(dim, 0.0));
  }
  std::vector<index_t> count(static_cast<std::size_t>(agg.n_aggregates), 0);
  for (index_t i = 0; i < agg.n_nodes; ++i) {
    const index_t a = agg.node_to_aggregate[i];
    if (a < 0) continue;
    for (int c = 0; c < 3; ++c) coarse.coords[a][c] += aux.coords[i][c];
    if (with_materials) coarse.materials[a] += aux.materials[i];
    ++count[a];
  }
  for (index_t a = 0; a < agg.n_aggregates; ++a) {
    if (count[a] == 0)
      throw std::invalid_argument("coarsen_auxiliary: empty aggregate " +
                                  std::to_string(a));
    const double inv = 1.0 / static_cast<double>(count[a]);
    for (int c = 0; c < 3; ++c) coarse.coords[a][c] *= inv;
    if (with_materials) coarse.materials[a] *= inv;
  }
  return coarse;
}

}  // namespace matamg
