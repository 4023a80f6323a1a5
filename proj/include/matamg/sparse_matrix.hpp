#pragma once

/// Compressed sparse row storage plus the handful of sparse kernels the
/// multigrid setup needs: matrix-vector products, transpose, sparse products
/// and the Galerkin triple product.  Patterns are structural: an entry whose
/// value works out to exactly 0.0 stays in the pattern, so rebuilds and
/// complexity accounting are deterministic.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace matamg {

using index_t = std::int64_t;

/// Sparse matrix in CSR format.  Column indices are strictly ascending within
/// each row; duplicates are merged at build time.
struct SparseMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<index_t> row_offsets;  ///< size n_rows + 1
  std::vector<index_t> col_indices;  ///< size nnz, ascending per row
  std::vector<double> values;        ///< size nnz

  index_t nnz() const { return static_cast<index_t>(col_indices.size()); }

  bool empty() const { return n_rows == 0; }

  /// Value at (i, j); 0.0 when the entry is not stored.
  double at(index_t i, index_t j) const {
    const index_t k = find(i, j);
    return k < 0 ? 0.0 : values[static_cast<std::size_t>(k)];
  }

  /// Index into values/col_indices of entry (i, j), or -1 if not stored.
  index_t find(index_t i, index_t j) const {
    const auto begin = col_indices.begin() + row_offsets[i];
    const auto end = col_indices.begin() + row_offsets[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return -1;
    return static_cast<index_t>(it - col_indices.begin());
  }
};

/// Throws std::invalid_argument when the CSR arrays are inconsistent.
inline void validate(const SparseMatrix& A, const std::string& where) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
  };
  if (A.n_rows < 0 || A.n_cols < 0) fail("negative dimension");
  if (A.row_offsets.size() != static_cast<std::size_t>(A.n_rows) + 1)
    fail("row_offsets size mismatch");
  if (!A.row_offsets.empty() && A.row_offsets.front() != 0)
    fail("row_offsets must start at 0");
  if (A.col_indices.size() != A.values.size())
    fail("col_indices/values size mismatch");
  if (!A.row_offsets.empty() &&
      A.row_offsets.back() != static_cast<index_t>(A.col_indices.size()))
    fail("row_offsets must end at nnz");
  for (index_t i = 0; i < A.n_rows; ++i) {
    if (A.row_offsets[i] > A.row_offsets[i + 1]) fail("descending row offset");
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      if (A.col_indices[k] < 0 || A.col_indices[k] >= A.n_cols)
        fail("column index out of range in row " + std::to_string(i));
      if (k > A.row_offsets[i] && A.col_indices[k - 1] >= A.col_indices[k])
        fail("columns not strictly ascending in row " + std::to_string(i));
    }
  }
}

/// Accumulates (row, col, value) triplets; build() sorts row-major, sums
/// duplicates and emits CSR.  Entries summing to exactly 0.0 are kept.
struct CooBuilder {
  struct Entry {
    index_t row;
    index_t col;
    double value;
  };
  std::vector<Entry> entries;

  void add(index_t row, index_t col, double value) {
    entries.push_back({row, col, value});
  }

  SparseMatrix build(index_t n_rows, index_t n_cols) {
    for (const Entry& e : entries) {
      if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
        throw std::invalid_argument("CooBuilder: entry out of range");
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    SparseMatrix A;
    A.n_rows = n_rows;
    A.n_cols = n_cols;
    A.row_offsets.assign(static_cast<std::size_t>(n_rows) + 1, 0);
    for (std::size_t k = 0; k < entries.size();) {
      std::size_t k_end = k + 1;
      double sum = entries[k].value;
      while (k_end < entries.size() && entries[k_end].row == entries[k].row &&
             entries[k_end].col == entries[k].col) {
        sum += entries[k_end].value;
        ++k_end;
      }
      A.col_indices.push_back(entries[k].col);
      A.values.push_back(sum);
      ++A.row_offsets[entries[k].row + 1];
      k = k_end;
    }
    for (index_t i = 0; i < n_rows; ++i) A.row_offsets[i + 1] += A.row_offsets[i];
    return A;
  }
};

inline SparseMatrix identity_matrix(index_t n) {
  SparseMatrix I;
  I.n_rows = I.n_cols = n;
  I.row_offsets.resize(static_cast<std::size_t>(n) + 1);
  I.col_indices.resize(static_cast<std::size_t>(n));
  I.values.assign(static_cast<std::size_t>(n), 1.0);
  for (index_t i = 0; i <= n; ++i) I.row_offsets[i] = i;
  for (index_t i = 0; i < n; ++i) I.col_indices[i] = i;
  return I;
}

/// y = A * x, accumulated in stored-entry order.
inline std::vector<double> spmv(const SparseMatrix& A,
                                const std::vector<double>& x) {
  if (x.size() != static_cast<std::size_t>(A.n_cols))
    throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(static_cast<std::size_t>(A.n_rows), 0.0);
  for (index_t i = 0; i < A.n_rows; ++i) {
    double acc = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      acc += A.values[k] * x[A.col_indices[k]];
    y[i] = acc;
  }
  return y;
}

/// B = A^T via a counting pass; keeps explicit zeros and sorted columns.
inline SparseMatrix transpose(const SparseMatrix& A) {
  SparseMatrix B;
  B.n_rows = A.n_cols;
  B.n_cols = A.n_rows;
  B.row_offsets.assign(static_cast<std::size_t>(A.n_cols) + 1, 0);
  for (index_t c : A.col_indices) ++B.row_offsets[c + 1];
  for (index_t i = 0; i < B.n_rows; ++i) B.row_offsets[i + 1] += B.row_offsets[i];
  B.col_indices.resize(A.col_indices.size());
  B.values.resize(A.values.size());
  std::vector<index_t> next(B.row_offsets.begin(), B.row_offsets.end() - 1);
  for (index_t i = 0; i < A.n_rows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t pos = next[A.col_indices[k]]++;
      B.col_indices[pos] = i;
      B.values[pos] = A.values[k];
    }
  }
  return B;
}

/// C = A * B (Gustavson).  Structural product: every reachable position is
/// stored even when the accumulated value is exactly zero.
inline SparseMatrix multiply(const SparseMatrix& A, const SparseMatrix& B) {
  if (A.n_cols != B.n_rows)
    throw std::invalid_argument("multiply: dimension mismatch");
  SparseMatrix C;
  C.n_rows = A.n_rows;
  C.n_cols = B.n_cols;
  C.row_offsets.assign(static_cast<std::size_t>(A.n_rows) + 1, 0);
  std::vector<double> accum(static_cast<std::size_t>(B.n_cols), 0.0);
  std::vector<index_t> marker(static_cast<std::size_t>(B.n_cols), -1);
  std::vector<index_t> row_cols;
  for (index_t i = 0; i < A.n_rows; ++i) {
    row_cols.clear();
    for (index_t ka = A.row_offsets[i]; ka < A.row_offsets[i + 1]; ++ka) {
      const index_t k = A.col_indices[ka];
      const double a = A.values[ka];
      for (index_t kb = B.row_offsets[k]; kb < B.row_offsets[k + 1]; ++kb) {
        const index_t j = B.col_indices[kb];
        if (marker[j] != i) {
          marker[j] = i;
          accum[j] = 0.0;
          row_cols.push_back(j);
        }
        accum[j] += a * B.values[kb];
      }
    }
    std::sort(row_cols.begin(), row_cols.end());
    for (index_t j : row_cols) {
      C.col_indices.push_back(j);
      C.values.push_back(accum[j]);
    }
    C.row_offsets[i + 1] = static_cast<index_t>(C.col_indices.size());
  }
  return C;
}

/// C = alpha * A + beta * B with the union of both patterns.
inline SparseMatrix add(const SparseMatrix& A, const SparseMatrix& B,
                        double alpha = 1.0, double beta = 1.0) {
  if (A.n_rows != B.n_rows || A.n_cols != B.n_cols)
    throw std::invalid_argument("add: dimension mismatch");
  SparseMatrix C;
  C.n_rows = A.n_rows;
  C.n_cols = A.n_cols;
  C.row_offsets.assign(static_cast<std::size_t>(A.n_rows) + 1, 0);
  for (index_t i = 0; i < A.n_rows; ++i) {
    index_t ka = A.row_offsets[i];
    index_t kb = B.row_offsets[i];
    const index_t ea = A.row_offsets[i + 1];
    const index_t eb = B.row_offsets[i + 1];
    while (ka < ea || kb < eb) {
      index_t col;
      double v = 0.0;
      if (kb >= eb || (ka < ea && A.col_indices[ka] < B.col_indices[kb])) {
        col = A.col_indices[ka];
        v = alpha * A.values[ka++];
      } else if (ka >= ea || B.col_indices[kb] < A.col_indices[ka]) {
        col = B.col_indices[kb];
        v = beta * B.values[kb++];
      } else {
        col = A.col_indices[ka];
        v = alpha * A.values[ka++] + beta * B.values[kb++];
      }
      C.col_indices.push_back(col);
      C.values.push_back(v);
    }
    C.row_offsets[i + 1] = static_cast<index_t>(C.col_indices.size());
  }
  return C;
}

/// Galerkin triple product P^T * A * P.
inline SparseMatrix galerkin_product(const SparseMatrix& P,
                                     const SparseMatrix& A) {
  if (A.n_rows != A.n_cols || A.n_rows != P.n_rows)
    throw std::invalid_argument("galerkin_product: dimension mismatch");
  return multiply(transpose(P), multiply(A, P));
}

/// Diagonal of A as a dense vector; rows without a stored diagonal get 0.0.
inline std::vector<double> extract_diagonal(const SparseMatrix& A) {
  std::vector<double> d(static_cast<std::size_t>(A.n_rows), 0.0);
  for (index_t i = 0; i < A.n_rows && i < A.n_cols; ++i) {
    const index_t k = A.find(i, i);
    if (k >= 0) d[i] = A.values[k];
  }
  return d;
}

}  // namespace matamg
