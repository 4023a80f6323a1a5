#pragma once

/// Dense LU factorization with partial pivoting for the coarsest-level solve.
/// The factorization is computed once per hierarchy and reused across cycles.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <matamg/sparse_matrix.hpp>

namespace matamg {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Row-major dense LU with partial pivoting.
struct DenseLu {
  index_t n = 0;
  std::vector<double> lu;    ///< packed L (unit diagonal) and U
  std::vector<index_t> piv;  ///< row swaps applied during elimination

  static DenseLu factor(const SparseMatrix& A) {
    if (A.n_rows != A.n_cols)
      throw std::invalid_argument("DenseLu: square matrix required");
    DenseLu f;
    f.n = A.n_rows;
    const std::size_t n = static_cast<std::size_t>(f.n);
    f.lu.assign(n * n, 0.0);
    f.piv.resize(n);
    for (index_t i = 0; i < A.n_rows; ++i)
      for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
        f.lu[static_cast<std::size_t>(i) * n + A.col_indices[k]] = A.values[k];
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      double best = std::abs(f.lu[col * n + col]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const double v = std::abs(f.lu[r * n + col]);
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
      if (best == 0.0)
        throw SingularMatrixError("DenseLu: singular matrix at column " +
                                  std::to_string(col));
      f.piv[col] = static_cast<index_t>(pivot);
      if (pivot != col)
        for (std::size_t c = 0; c < n; ++c)
          std::swap(f.lu[col * n + c], f.lu[pivot * n + c]);
      const double inv_diag = 1.0 / f.lu[col * n + col];
      for (std::size_t r = col + 1; r < n; ++r) {
        const double m = f.lu[r * n + col] * inv_diag;
        f.lu[r * n + col] = m;
        if (m == 0.0) continue;
        for (std::size_t c = col + 1; c < n; ++c)
          f.lu[r * n + c] -= m * f.lu[col * n + c];
      }
    }
    return f;
  }

  std::vector<double> solve(const std::vector<double>& b) const {
    if (b.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("DenseLu::solve: dimension mismatch");
    const std::size_t nn = static_cast<std::size_t>(n);
    std::vector<double> x = b;
    for (std::size_t i = 0; i < nn; ++i)
      if (piv[i] != static_cast<index_t>(i))
        std::swap(x[i], x[static_cast<std::size_t>(piv[i])]);
    for (std::size_t i = 0; i < nn; ++i) {
      double s = x[i];
      for (std::size_t c = 0; c < i; ++c) s -= lu[i * nn + c] * x[c];
      x[i] = s;
    }
    for (std::size_t ii = nn; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t c = ii + 1; c < nn; ++c) s -= lu[ii * nn + c] * x[c];
      x[ii] = s / lu[ii * nn + ii];
    }
    return x;
  }
};

/// One-shot dense direct solve (factor + solve).
inline std::vector<double> coarse_solve(const SparseMatrix& A,
                                        const std::vector<double>& b) {
  return DenseLu::factor(A).solve(b);
}

}  // namespace matamg
