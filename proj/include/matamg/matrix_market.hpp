#pragma once

/// MatrixMarket coordinate-format I/O ("matrix coordinate real general",
/// 1-based indices).  This is the on-disk interchange format for assembled
/// and coarse-level operators.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <matamg/sparse_matrix.hpp>

namespace matamg {

inline void write_matrix_market(std::ostream& out, const SparseMatrix& A) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.n_rows << " " << A.n_cols << " " << A.nnz() << "\n";
  char buf[96];
  for (index_t i = 0; i < A.n_rows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%lld %lld %.17g",
                    static_cast<long long>(i + 1),
                    static_cast<long long>(A.col_indices[k] + 1), A.values[k]);
      out << buf << "\n";
    }
  }
}

inline void write_matrix_market(const std::string& path,
                                const SparseMatrix& A) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix_market(out, A);
}

inline SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("MatrixMarket: empty stream");
  {
    std::istringstream head(line);
    std::string banner, object, format, field, symmetry;
    head >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" ||
        format != "coordinate" || field != "real" || symmetry != "general")
      throw std::runtime_error(
          "MatrixMarket: unsupported header, expected "
          "'%%MatrixMarket matrix coordinate real general', got: " +
          line);
  }
  index_t n_rows = -1, n_cols = -1, n_entries = -1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream sizes(line);
    if (!(sizes >> n_rows >> n_cols >> n_entries))
      throw std::runtime_error("MatrixMarket: bad size line " +
                               std::to_string(line_no));
    break;
  }
  if (n_rows < 0)
    throw std::runtime_error("MatrixMarket: missing size line");
  CooBuilder coo;
  index_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    index_t i, j;
    double v;
    if (!(entry >> i >> j >> v))
      throw std::runtime_error("MatrixMarket: bad entry at line " +
                               std::to_string(line_no));
    if (i < 1 || i > n_rows || j < 1 || j > n_cols)
      throw std::runtime_error("MatrixMarket: index out of range at line " +
                               std::to_string(line_no));
    coo.add(i - 1, j - 1, v);
    ++seen;
  }
  if (seen != n_entries)
    throw std::runtime_error("MatrixMarket: expected " +
                             std::to_string(n_entries) + " entries, found " +
                             std::to_string(seen));
  return coo.build(n_rows, n_cols);
}

inline SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_matrix_market(in);
}

}  // namespace matamg
