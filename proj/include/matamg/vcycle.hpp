#pragma once

/// Multiplicative V-cycle over a built hierarchy: Chebyshev pre/post
/// smoothing, residual restriction through P^T, coarse-grid correction
/// through P, and the cached dense factorization on the coarsest level.

#include <stdexcept>
#include <vector>

#include <matamg/hierarchy.hpp>
#include <matamg/smoothers.hpp>

namespace matamg {

namespace detail {

inline void v_cycle_level(const Hierarchy& h, std::size_t level,
                          const std::vector<double>& b,
                          std::vector<double>& x) {
  const Level& L = h.levels[level];
  if (level + 1 == h.levels.size()) {
    x = h.coarse_factor.solve(b);
    return;
  }
  const AmgConfig& cfg = h.config;
  chebyshev_smooth(L.A, L.diagonal, b, x, cfg.chebyshev_degree,
                   L.smoother_lambda, cfg.chebyshev_eig_ratio);
  const std::vector<double> r = detail::residual(L.A, b, x);
  const std::vector<double> b_coarse = spmv(transpose(L.P), r);
  std::vector<double> x_coarse(b_coarse.size(), 0.0);
  v_cycle_level(h, level + 1, b_coarse, x_coarse);
  const std::vector<double> correction = spmv(L.P, x_coarse);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += correction[i];
  chebyshev_smooth(L.A, L.diagonal, b, x, cfg.chebyshev_degree,
                   L.smoother_lambda, cfg.chebyshev_eig_ratio);
}

}  // namespace detail

/// One V-cycle for A x = b starting from the given x.  A single-level
/// hierarchy degenerates to the direct coarse solve.
inline void v_cycle(const Hierarchy& h, const std::vector<double>& b,
                    std::vector<double>& x) {
  if (h.levels.empty())
    throw std::invalid_argument("v_cycle: empty hierarchy");
  if (b.size() != static_cast<std::size_t>(h.levels.front().A.n_rows) ||
      x.size() != b.size())
    throw std::invalid_argument("v_cycle: dimension mismatch");
  detail::v_cycle_level(h, 0, b, x);
}

/// Fixed linear preconditioner z = M^{-1} r realized as one V-cycle from a
/// zero initial guess.  Restriction transposes are cached so repeated
/// applications only pay matrix-vector products.
class VCyclePreconditioner {
 public:
  explicit VCyclePreconditioner(const Hierarchy& h) : h_(&h) {
    transposes_.reserve(h.levels.size());
    for (const Level& L : h.levels)
      transposes_.push_back(L.has_transfer ? transpose(L.P) : SparseMatrix{});
  }

  std::vector<double> operator()(const std::vector<double>& r) const {
    std::vector<double> z(r.size(), 0.0);
    apply_level(0, r, z);
    return z;
  }

 private:
  void apply_level(std::size_t level, const std::vector<double>& b,
                   std::vector<double>& x) const {
    const Level& L = h_->levels[level];
    if (level + 1 == h_->levels.size()) {
      x = h_->coarse_factor.solve(b);
      return;
    }
    const AmgConfig& cfg = h_->config;
    chebyshev_smooth(L.A, L.diagonal, b, x, cfg.chebyshev_degree,
                     L.smoother_lambda, cfg.chebyshev_eig_ratio);
    const std::vector<double> r = detail::residual(L.A, b, x);
    const std::vector<double> b_coarse = spmv(transposes_[level], r);
    std::vector<double> x_coarse(b_coarse.size(), 0.0);
    apply_level(level + 1, b_coarse, x_coarse);
    const std::vector<double> correction = spmv(L.P, x_coarse);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += correction[i];
    chebyshev_smooth(L.A, L.diagonal, b, x, cfg.chebyshev_degree,
                     L.smoother_lambda, cfg.chebyshev_eig_ratio);
  }

  const Hierarchy* h_;
  std::vector<SparseMatrix> transposes_;
};

}  // namespace matamg
