#pragma once

/// Symmetric positive definite material (diffusion) tensors in 2-d or 3-d,
/// stored as the upper-left block of a row-major 3x3 array.  These carry the
/// coefficient information that the material-aware strength measure consumes.

#include <array>
#include <cmath>
#include <stdexcept>

namespace matamg {

struct MaterialTensor {
  int dim = 2;
  std::array<double, 9> a{};  ///< row-major 3x3; 2-d tensors use the 2x2 block

  double operator()(int r, int c) const { return a[3 * r + c]; }

  void set(int r, int c, double v) {
    a[3 * r + c] = v;
    a[3 * c + r] = v;
  }

  static MaterialTensor identity(int dim) { return isotropic(dim, 1.0); }

  static MaterialTensor isotropic(int dim, double c) {
    MaterialTensor t;
    t.dim = dim;
    for (int k = 0; k < dim; ++k) t.a[3 * k + k] = c;
    return t;
  }

  static MaterialTensor diagonal2(double sxx, double syy) {
    MaterialTensor t;
    t.dim = 2;
    t.a[0] = sxx;
    t.a[4] = syy;
    return t;
  }

  static MaterialTensor diagonal3(double sxx, double syy, double szz) {
    MaterialTensor t;
    t.dim = 3;
    t.a[0] = sxx;
    t.a[4] = syy;
    t.a[8] = szz;
    return t;
  }

  double det() const {
    if (dim == 2) return a[0] * a[4] - a[1] * a[3];
    return a[0] * (a[4] * a[8] - a[5] * a[7]) -
           a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }

  /// Sylvester's criterion on the leading principal minors.
  bool is_spd() const {
    if (a[0] <= 0.0) return false;
    const double m2 = a[0] * a[4] - a[1] * a[3];
    if (dim == 2) return m2 > 0.0;
    return m2 > 0.0 && det() > 0.0;
  }

  MaterialTensor inverse() const {
    MaterialTensor inv;
    inv.dim = dim;
    const double d = det();
    if (d == 0.0 || !std::isfinite(d))
      throw std::invalid_argument("MaterialTensor: singular tensor");
    if (dim == 2) {
      inv.a[0] = a[4] / d;
      inv.a[4] = a[0] / d;
      inv.a[1] = -a[1] / d;
      inv.a[3] = -a[3] / d;
    } else {
      inv.a[0] = (a[4] * a[8] - a[5] * a[7]) / d;
      inv.a[1] = (a[2] * a[7] - a[1] * a[8]) / d;
      inv.a[2] = (a[1] * a[5] - a[2] * a[4]) / d;
      inv.a[3] = (a[5] * a[6] - a[3] * a[8]) / d;
      inv.a[4] = (a[0] * a[8] - a[2] * a[6]) / d;
      inv.a[5] = (a[2] * a[3] - a[0] * a[5]) / d;
      inv.a[6] = (a[3] * a[7] - a[4] * a[6]) / d;
      inv.a[7] = (a[1] * a[6] - a[0] * a[7]) / d;
      inv.a[8] = (a[0] * a[4] - a[1] * a[3]) / d;
    }
    return inv;
  }

  /// v^T * this * v over the first `dim` components.
  double quad_form(const std::array<double, 3>& v) const {
    double s = 0.0;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) s += v[r] * a[3 * r + c] * v[c];
    return s;
  }

  MaterialTensor& operator+=(const MaterialTensor& o) {
    for (int k = 0; k < 9; ++k) a[k] += o.a[k];
    return *this;
  }

  MaterialTensor& operator*=(double s) {
    for (double& v : a) v *= s;
    return *this;
  }
};

}  // namespace matamg
