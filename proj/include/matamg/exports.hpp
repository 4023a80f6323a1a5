#pragma once

/// Plain-text export of setup byproducts: node coordinates, material
/// tensors, strength graphs, kept-edge graphs, aggregates, and a JSON
/// summary of a built hierarchy.  All floating-point output uses the
/// shortest round-trip decimal form so repeated runs are byte-identical.

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include <matamg/filtering.hpp>
#include <matamg/hierarchy.hpp>
#include <matamg/material_tensor.hpp>
#include <matamg/strength.hpp>

namespace matamg {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

inline void write_coords_csv(std::ostream& out,
                             const std::vector<std::array<double, 3>>& coords) {
  out << "node_id,x,y,z\n";
  for (std::size_t i = 0; i < coords.size(); ++i)
    out << i << ',' << format_double(coords[i][0]) << ','
        << format_double(coords[i][1]) << ',' << format_double(coords[i][2])
        << '\n';
}

/// Lower triangle of each symmetric 3x3 tensor in row-major order; 2-d
/// tensors carry zeros in the third row/column.
inline void write_materials_csv(std::ostream& out,
                                const std::vector<MaterialTensor>& materials) {
  out << "node_id,dim,a00,a10,a11,a20,a21,a22\n";
  for (std::size_t i = 0; i < materials.size(); ++i) {
    const MaterialTensor& t = materials[i];
    out << i << ',' << t.dim << ',' << format_double(t(0, 0)) << ','
        << format_double(t(1, 0)) << ',' << format_double(t(1, 1)) << ','
        << format_double(t(2, 0)) << ',' << format_double(t(2, 1)) << ','
        << format_double(t(2, 2)) << '\n';
  }
}

inline void write_dirichlet_csv(std::ostream& out,
                                const std::vector<std::uint8_t>& is_dirichlet) {
  out << "node_id,is_dirichlet\n";
  for (std::size_t i = 0; i < is_dirichlet.size(); ++i)
    out << i << ',' << (is_dirichlet[i] ? 1 : 0) << '\n';
}

/// Every stored entry of a strength matrix.
inline void write_soc_csv(std::ostream& out, const SocMatrix& soc) {
  out << "row,col,value\n";
  const SparseMatrix& S = soc.S;
  for (index_t i = 0; i < S.n_rows; ++i)
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k)
      out << i << ',' << S.col_indices[k] << ','
          << format_double(S.values[k]) << '\n';
}

/// Kept off-diagonal edges of levels that performed coarsening; pass a
/// non-negative `only_level` to restrict the output to one level.
inline void write_graph_csv(std::ostream& out, const Hierarchy& h,
                            index_t only_level = -1) {
  out << "level,row,col\n";
  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    if (only_level >= 0 && static_cast<std::size_t>(only_level) != l) continue;
    const Level& level = h.levels[l];
    if (!level.has_transfer) continue;
    const SparseMatrix& S = level.soc.S;
    for (index_t i = 0; i < S.n_rows; ++i)
      for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k)
        if (S.col_indices[k] != i && level.mask.keep[k])
          out << l << ',' << i << ',' << S.col_indices[k] << '\n';
  }
}

/// Node-to-aggregate map with coordinates; unaggregated (excluded) nodes
/// carry aggregate_id -1.  Pass a non-negative `only_level` to restrict the
/// output to one level.
inline void write_aggregates_csv(std::ostream& out, const Hierarchy& h,
                                 index_t only_level = -1) {
  out << "level,node_id,x,y,z,aggregate_id\n";
  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    if (only_level >= 0 && static_cast<std::size_t>(only_level) != l) continue;
    const Level& level = h.levels[l];
    if (!level.has_transfer) continue;
    const Aggregation& agg = level.aggregates;
    for (index_t i = 0; i < agg.n_nodes; ++i) {
      const std::array<double, 3>& x = level.aux.coords[i];
      out << l << ',' << i << ',' << format_double(x[0]) << ','
          << format_double(x[1]) << ',' << format_double(x[2]) << ','
          << agg.node_to_aggregate[i] << '\n';
    }
  }
}

inline nlohmann::json hierarchy_summary_json(const Hierarchy& h) {
  nlohmann::json summary;
  summary["n_levels"] = h.levels.size();
  summary["stagnated"] = h.stagnated;
  summary["operator_complexity"] = operator_complexity(h);
  summary["config"] = {
      {"soc", to_string(h.config.soc_kind)},
      {"drop", to_string(h.config.drop_kind)},
      {"theta", h.config.theta},
      {"max_levels", h.config.max_levels},
      {"max_coarse_size", h.config.max_coarse_size},
      {"omega_sym", h.config.omega_sym},
      {"power_iterations", h.config.power_iterations},
      {"chebyshev_degree", h.config.chebyshev_degree},
      {"chebyshev_eig_ratio", h.config.chebyshev_eig_ratio},
  };
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    const Level& level = h.levels[l];
    nlohmann::json entry = {
        {"level", l},
        {"n_rows", level.A.n_rows},
        {"nnz", level.A.nnz()},
        {"smoother_lambda", level.smoother_lambda},
    };
    if (level.has_transfer) {
      entry["n_aggregates"] = level.aggregates.n_aggregates;
      entry["kept_edges"] = level.mask.kept();
      entry["prolongator_nnz"] = level.P.nnz();
    }
    levels.push_back(entry);
  }
  summary["levels"] = levels;
  return summary;
}

inline void write_hierarchy_summary(std::ostream& out, const Hierarchy& h) {
  out << hierarchy_summary_json(h).dump(2) << '\n';
}

inline std::string sweep_csv_header() {
  return "problem,n,nr,nt,nz,kappa,soc,drop,theta,iterations,converged,"
         "levels,operator_complexity,cost,setup_seconds,solve_seconds,seed";
}

/// One benchmark run.  Grid fields that do not apply to the problem are
/// zero; `cost` is empty unless the solve converged.
struct SweepRecord {
  std::string problem;
  index_t n = 0;
  index_t nr = 0;
  index_t nt = 0;
  index_t nz = 0;
  double kappa = 1.0;
  SocKind soc = SocKind::material_dlap;
  DropKind drop = DropKind::pointwise;
  double theta = 0.0;
  int iterations = 0;
  bool converged = false;
  int levels = 0;
  double operator_complexity = 0.0;
  std::optional<double> cost;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  std::uint64_t seed = 0;
};

inline void append_sweep_row(std::ostream& out, const SweepRecord& rec) {
  out << rec.problem << ',' << rec.n << ',' << rec.nr << ',' << rec.nt << ','
      << rec.nz << ',' << format_double(rec.kappa) << ','
      << to_string(rec.soc) << ',' << to_string(rec.drop) << ','
      << format_double(rec.theta) << ',' << rec.iterations << ','
      << (rec.converged ? "true" : "false") << ',' << rec.levels << ','
      << format_double(rec.operator_complexity) << ','
      << (rec.cost ? format_double(*rec.cost) : std::string()) << ','
      << format_double(rec.setup_seconds) << ','
      << format_double(rec.solve_seconds) << ',' << rec.seed << '\n';
}

}  // namespace matamg
