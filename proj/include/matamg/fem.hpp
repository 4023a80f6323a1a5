#pragma once

/// Structured-grid finite element assembly for scalar diffusion
/// -div(sigma grad u) = f with tensor-valued, element-constant coefficients:
/// bilinear quadrilaterals in 2-d, trilinear hexahedra in 3-d, full Gauss
/// quadrature (2 points per direction), and symmetric Dirichlet elimination
/// with unit diagonal rows.  Ships the three built-in benchmark problems.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <matamg/material_tensor.hpp>
#include <matamg/sparse_matrix.hpp>

namespace matamg {

/// Tensor-product mesh of quads (4 nodes/element) or hexes (8 nodes/element).
struct StructuredMesh {
  int dim = 2;
  int nodes_per_element = 4;
  std::vector<std::array<double, 3>> coords;
  std::vector<std::array<index_t, 8>> elements;
  std::vector<std::uint8_t> is_dirichlet;
  std::vector<double> dirichlet_value;
};

/// Assembled linear system together with the per-node geometric and material
/// data the strength measures consume.
struct AssembledProblem {
  int dim = 2;
  SparseMatrix A;
  std::vector<double> b;
  std::vector<std::array<double, 3>> coords;
  std::vector<MaterialTensor> node_materials;
  std::vector<std::uint8_t> is_dirichlet;
};

namespace detail {

/// Reference-element corners: quad counter-clockwise, hex bottom face then
/// top face, both counter-clockwise when viewed from +z.
inline const std::array<std::array<double, 3>, 8>& reference_corners(int dim) {
  static const std::array<std::array<double, 3>, 8> quad = {{{-1, -1, 0},
                                                             {1, -1, 0},
                                                             {1, 1, 0},
                                                             {-1, 1, 0},
                                                             {0, 0, 0},
                                                             {0, 0, 0},
                                                             {0, 0, 0},
                                                             {0, 0, 0}}};
  static const std::array<std::array<double, 3>, 8> hex = {{{-1, -1, -1},
                                                            {1, -1, -1},
                                                            {1, 1, -1},
                                                            {-1, 1, -1},
                                                            {-1, -1, 1},
                                                            {1, -1, 1},
                                                            {1, 1, 1},
                                                            {-1, 1, 1}}};
  return dim == 2 ? quad : hex;
}

inline double shape_value(int dim, int i, const std::array<double, 3>& xi) {
  const auto& c = reference_corners(dim)[i];
  double v = 0.25 * (1.0 + c[0] * xi[0]) * (1.0 + c[1] * xi[1]);
  if (dim == 3) v *= 0.5 * (1.0 + c[2] * xi[2]);
  return v;
}

inline std::array<double, 3> shape_gradient(int dim, int i,
                                            const std::array<double, 3>& xi) {
  const auto& c = reference_corners(dim)[i];
  const double fx = 1.0 + c[0] * xi[0];
  const double fy = 1.0 + c[1] * xi[1];
  if (dim == 2) return {0.25 * c[0] * fy, 0.25 * fx * c[1], 0.0};
  const double fz = 1.0 + c[2] * xi[2];
  return {0.125 * c[0] * fy * fz, 0.125 * fx * c[1] * fz,
          0.125 * fx * fy * c[2]};
}

inline double det3(const std::array<double, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace detail

/// Element stiffness and load (constant source f) for one quad or hex with an
/// element-constant tensor.  2^dim-point Gauss quadrature, which integrates
/// the bilinear/trilinear gradient products exactly on affine images.
inline void element_stiffness(int dim, const std::array<double, 3>* node_coords,
                              const MaterialTensor& sigma, double f,
                              double ke[8][8], double load[8]) {
  const int npe = dim == 2 ? 4 : 8;
  for (int i = 0; i < npe; ++i) {
    load[i] = 0.0;
    for (int j = 0; j < npe; ++j) ke[i][j] = 0.0;
  }
  const double g = 1.0 / std::sqrt(3.0);
  const int n_quad = dim == 2 ? 4 : 8;
  for (int q = 0; q < n_quad; ++q) {
    const auto& ref = detail::reference_corners(dim)[q];
    const std::array<double, 3> xi = {g * ref[0], g * ref[1], g * ref[2]};
    // Jacobian J_ab = d x_a / d xi_b, padded to 3x3 with an identity z-row in
    // 2-d so one inversion path serves both dimensions.
    std::array<double, 9> J{0, 0, 0, 0, 0, 0, 0, 0, dim == 2 ? 1.0 : 0.0};
    std::array<std::array<double, 3>, 8> dN;
    for (int i = 0; i < npe; ++i) {
      dN[i] = detail::shape_gradient(dim, i, xi);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) J[3 * a + b] += node_coords[i][a] * dN[i][b];
    }
    const double detJ = detail::det3(J);
    if (!(detJ > 0.0))
      throw std::invalid_argument(
          "element_stiffness: degenerate element (det J <= 0)");
    // Inverse via adjugate; physical gradients grad N_i = J^{-T} dN_i.
    std::array<double, 9> Jinv;
    Jinv[0] = (J[4] * J[8] - J[5] * J[7]) / detJ;
    Jinv[1] = (J[2] * J[7] - J[1] * J[8]) / detJ;
    Jinv[2] = (J[1] * J[5] - J[2] * J[4]) / detJ;
    Jinv[3] = (J[5] * J[6] - J[3] * J[8]) / detJ;
    Jinv[4] = (J[0] * J[8] - J[2] * J[6]) / detJ;
    Jinv[5] = (J[2] * J[3] - J[0] * J[5]) / detJ;
    Jinv[6] = (J[3] * J[7] - J[4] * J[6]) / detJ;
    Jinv[7] = (J[1] * J[6] - J[0] * J[7]) / detJ;
    Jinv[8] = (J[0] * J[4] - J[1] * J[3]) / detJ;
    std::array<std::array<double, 3>, 8> grad;
    for (int i = 0; i < npe; ++i) {
      for (int a = 0; a < 3; ++a)
        grad[i][a] = Jinv[3 * 0 + a] * dN[i][0] + Jinv[3 * 1 + a] * dN[i][1] +
                     Jinv[3 * 2 + a] * dN[i][2];
    }
    const double w = detJ;  // all 2-point Gauss weights are 1
    for (int i = 0; i < npe; ++i) {
      std::array<double, 3> sg = {0.0, 0.0, 0.0};
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) sg[r] += sigma(r, c) * grad[i][c];
      for (int j = 0; j < npe; ++j) {
        double dot = 0.0;
        for (int r = 0; r < dim; ++r) dot += sg[r] * grad[j][r];
        ke[i][j] += w * dot;
      }
      load[i] += w * f * detail::shape_value(dim, i, xi);
    }
  }
}

/// Unweighted average of the element tensors over each node's element patch.
inline std::vector<MaterialTensor> nodal_material_average(
    const StructuredMesh& mesh,
    const std::vector<MaterialTensor>& element_materials) {
  if (element_materials.size() != mesh.elements.size())
    throw std::invalid_argument(
        "nodal_material_average: one tensor per element required");
  std::vector<MaterialTensor> out(mesh.coords.size(),
                                  MaterialTensor::isotropic(mesh.dim, 0.0));
  std::vector<int> count(mesh.coords.size(), 0);
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    for (int i = 0; i < mesh.nodes_per_element; ++i) {
      const index_t n = mesh.elements[e][i];
      out[n] += element_materials[e];
      ++count[n];
    }
  }
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (count[n] > 0)
      out[n] *= 1.0 / count[n];
    else
      out[n] = MaterialTensor::identity(mesh.dim);
  }
  return out;
}

/// Assembles A and b with symmetric elimination of Dirichlet rows/columns
/// (unit diagonal, right-hand side carries the boundary values).
inline AssembledProblem assemble(
    const StructuredMesh& mesh,
    const std::vector<MaterialTensor>& element_materials, double f = 1.0) {
  if (element_materials.size() != mesh.elements.size())
    throw std::invalid_argument("assemble: one tensor per element required");
  const index_t n = static_cast<index_t>(mesh.coords.size());
  AssembledProblem p;
  p.dim = mesh.dim;
  p.coords = mesh.coords;
  p.is_dirichlet = mesh.is_dirichlet;
  p.b.assign(static_cast<std::size_t>(n), 0.0);
  CooBuilder coo;
  double ke[8][8];
  double load[8];
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    std::array<std::array<double, 3>, 8> xc;
    for (int i = 0; i < mesh.nodes_per_element; ++i)
      xc[i] = mesh.coords[mesh.elements[e][i]];
    if (!element_materials[e].is_spd())
      throw std::invalid_argument("assemble: element tensor not SPD");
    element_stiffness(mesh.dim, xc.data(), element_materials[e], f, ke, load);
    for (int i = 0; i < mesh.nodes_per_element; ++i) {
      const index_t I = mesh.elements[e][i];
      if (mesh.is_dirichlet[I]) continue;  // row eliminated
      p.b[I] += load[i];
      for (int j = 0; j < mesh.nodes_per_element; ++j) {
        const index_t J = mesh.elements[e][j];
        if (mesh.is_dirichlet[J])
          p.b[I] -= ke[i][j] * mesh.dirichlet_value[J];  // column eliminated
        else
          coo.add(I, J, ke[i][j]);
      }
    }
  }
  for (index_t d = 0; d < n; ++d) {
    if (!mesh.is_dirichlet[d]) continue;
    coo.add(d, d, 1.0);
    p.b[d] = mesh.dirichlet_value[d];
  }
  p.A = coo.build(n, n);
  p.node_materials = nodal_material_average(mesh, element_materials);
  return p;
}

/// Unit-contrast / jumping-coefficient model problem on (-1,1)^2: identity
/// tensor left of x = 0, diag(kappa, 1) right of it (chosen per element
/// centroid), n x n elements, homogeneous Dirichlet boundary, f = 1.
inline AssembledProblem two_domain_problem(int n, double kappa) {
  if (n < 2) throw std::invalid_argument("two_domain_problem: n >= 2 required");
  StructuredMesh mesh;
  mesh.dim = 2;
  mesh.nodes_per_element = 4;
  const index_t nn = static_cast<index_t>(n) + 1;
  mesh.coords.resize(static_cast<std::size_t>(nn * nn));
  mesh.is_dirichlet.assign(mesh.coords.size(), 0);
  mesh.dirichlet_value.assign(mesh.coords.size(), 0.0);
  for (index_t iy = 0; iy < nn; ++iy) {
    for (index_t ix = 0; ix < nn; ++ix) {
      const index_t id = iy * nn + ix;
      mesh.coords[id] = {-1.0 + 2.0 * ix / n, -1.0 + 2.0 * iy / n, 0.0};
      if (ix == 0 || ix == n || iy == 0 || iy == n) mesh.is_dirichlet[id] = 1;
    }
  }
  std::vector<MaterialTensor> mats;
  mats.reserve(static_cast<std::size_t>(n) * n);
  for (index_t ey = 0; ey < n; ++ey) {
    for (index_t ex = 0; ex < n; ++ex) {
      const index_t c0 = ey * nn + ex;
      mesh.elements.push_back(
          {c0, c0 + 1, c0 + nn + 1, c0 + nn, 0, 0, 0, 0});
      const double cx = -1.0 + 2.0 * (ex + 0.5) / n;
      mats.push_back(cx < 0.0 ? MaterialTensor::identity(2)
                              : MaterialTensor::diagonal2(kappa, 1.0));
    }
  }
  return assemble(mesh, mats);
}

/// Rotation that maps the Cartesian frame onto the local annulus frame at
/// (x, y); the first row carries the high-conductivity (circumferential)
/// direction of sigma_hat = diag(kappa, 1, 1).
inline std::array<double, 9> annulus_frame(double x, double y) {
  const double r = std::sqrt(x * x + y * y);
  if (r == 0.0)
    throw std::invalid_argument("annulus_frame: point on the axis");
  // Rows: circumferential tangent, outward radial, thickness direction.
  return {-y / r, x / r, 0.0, x / r, y / r, 0.0, 0.0, 0.0, 1.0};
}

/// sigma = Q^T diag(kappa, 1, 1) Q at (x, y): conductivity kappa along the
/// circumferential direction, unit conductivity radially and through the
/// thickness.
inline MaterialTensor annulus_tensor(double x, double y, double kappa) {
  const std::array<double, 9> Q = annulus_frame(x, y);
  const std::array<double, 3> d = {kappa, 1.0, 1.0};
  MaterialTensor t;
  t.dim = 3;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += Q[3 * k + r] * d[k] * Q[3 * k + c];
      t.a[3 * r + c] = s;
    }
  return t;
}

/// Circumferentially anisotropic annulus (hollow cylinder): inner radius 0.5,
/// outer radius 1.0, thickness 0.1, hexahedral n_r x n_t x n_z mesh, periodic
/// in the angle.  Dirichlet u = 1 on the inner surface, u = 0 on the outer.
inline AssembledProblem annulus_problem(int n_r, int n_t, int n_z,
                                        double kappa) {
  if (n_r < 1 || n_t < 3 || n_z < 1)
    throw std::invalid_argument("annulus_problem: need n_r>=1, n_t>=3, n_z>=1");
  constexpr double r_inner = 0.5;
  constexpr double r_outer = 1.0;
  constexpr double thickness = 0.1;
  StructuredMesh mesh;
  mesh.dim = 3;
  mesh.nodes_per_element = 8;
  const index_t nr = n_r + 1;
  const index_t nt = n_t;  // periodic: angle index wraps
  const index_t nz = n_z + 1;
  auto node_id = [&](index_t ir, index_t it, index_t iz) {
    return ir + nr * ((it % nt) + nt * iz);
  };
  mesh.coords.resize(static_cast<std::size_t>(nr * nt * nz));
  mesh.is_dirichlet.assign(mesh.coords.size(), 0);
  mesh.dirichlet_value.assign(mesh.coords.size(), 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (index_t iz = 0; iz < nz; ++iz) {
    for (index_t it = 0; it < nt; ++it) {
      for (index_t ir = 0; ir < nr; ++ir) {
        const double r = r_inner + (r_outer - r_inner) * ir / n_r;
        const double phi = two_pi * it / n_t;
        const index_t id = node_id(ir, it, iz);
        mesh.coords[id] = {r * std::cos(phi), r * std::sin(phi),
                           thickness * iz / n_z};
        if (ir == 0) {
          mesh.is_dirichlet[id] = 1;
          mesh.dirichlet_value[id] = 1.0;
        } else if (ir == n_r) {
          mesh.is_dirichlet[id] = 1;
          mesh.dirichlet_value[id] = 0.0;
        }
      }
    }
  }
  std::vector<MaterialTensor> mats;
  for (index_t iz = 0; iz < n_z; ++iz) {
    for (index_t it = 0; it < nt; ++it) {
      for (index_t ir = 0; ir < n_r; ++ir) {
        const std::array<index_t, 8> elem = {
            node_id(ir, it, iz),         node_id(ir + 1, it, iz),
            node_id(ir + 1, it + 1, iz), node_id(ir, it + 1, iz),
            node_id(ir, it, iz + 1),     node_id(ir + 1, it, iz + 1),
            node_id(ir + 1, it + 1, iz + 1), node_id(ir, it + 1, iz + 1)};
        mesh.elements.push_back(elem);
        double cx = 0.0, cy = 0.0;
        for (int k = 0; k < 8; ++k) {
          cx += mesh.coords[elem[k]][0];
          cy += mesh.coords[elem[k]][1];
        }
        mats.push_back(annulus_tensor(cx / 8.0, cy / 8.0, kappa));
      }
    }
  }
  return assemble(mesh, mats);
}

/// 2-d strip of stacked horizontal layers on (0,1)^2 with isotropic scalar
/// conductivity cycling through `conductivities`; homogeneous Dirichlet on
/// top and bottom, natural boundary left and right.
inline AssembledProblem layered_stack_problem(
    int n_layers, int n_x, int n_y_per_layer,
    const std::vector<double>& conductivities) {
  if (n_layers < 1 || n_x < 1 || n_y_per_layer < 1)
    throw std::invalid_argument("layered_stack_problem: bad mesh parameters");
  if (conductivities.empty())
    throw std::invalid_argument(
        "layered_stack_problem: at least one conductivity required");
  for (double c : conductivities)
    if (!(c > 0.0))
      throw std::invalid_argument(
          "layered_stack_problem: conductivities must be positive");
  StructuredMesh mesh;
  mesh.dim = 2;
  mesh.nodes_per_element = 4;
  const int n_y = n_layers * n_y_per_layer;
  const index_t nx = n_x + 1;
  const index_t ny = n_y + 1;
  mesh.coords.resize(static_cast<std::size_t>(nx * ny));
  mesh.is_dirichlet.assign(mesh.coords.size(), 0);
  mesh.dirichlet_value.assign(mesh.coords.size(), 0.0);
  for (index_t iy = 0; iy < ny; ++iy) {
    for (index_t ix = 0; ix < nx; ++ix) {
      const index_t id = iy * nx + ix;
      mesh.coords[id] = {static_cast<double>(ix) / n_x,
                         static_cast<double>(iy) / n_y, 0.0};
      if (iy == 0 || iy == n_y) mesh.is_dirichlet[id] = 1;
    }
  }
  std::vector<MaterialTensor> mats;
  for (index_t ey = 0; ey < n_y; ++ey) {
    const std::size_t layer = static_cast<std::size_t>(ey) / n_y_per_layer;
    const double c = conductivities[layer % conductivities.size()];
    for (index_t ex = 0; ex < n_x; ++ex) {
      const index_t c0 = ey * nx + ex;
      mesh.elements.push_back({c0, c0 + 1, c0 + nx + 1, c0 + nx, 0, 0, 0, 0});
      mats.push_back(MaterialTensor::isotropic(2, c));
    }
  }
  return assemble(mesh, mats);
}

}  // namespace matamg
