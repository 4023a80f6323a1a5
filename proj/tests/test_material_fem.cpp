#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

#include <matamg/fem.hpp>
#include <matamg/material_tensor.hpp>
#include <matamg/strength.hpp>

#include "oracles.hpp"

using matamg::AssembledProblem;
using matamg::MaterialTensor;

TEST_CASE("material tensor inverse, quadratic form, SPD test") {
  MaterialTensor t = MaterialTensor::diagonal2(4.0, 0.25);
  CHECK(t.is_spd());
  const MaterialTensor inv = t.inverse();
  CHECK(inv(0, 0) == 0.25);
  CHECK(inv(1, 1) == 4.0);
  CHECK(t.quad_form({1.0, 2.0, 0.0}) == 4.0 + 4.0 * 0.25);

  MaterialTensor full;
  full.dim = 3;
  full.set(0, 0, 2.0);
  full.set(1, 1, 3.0);
  full.set(2, 2, 4.0);
  full.set(0, 1, 0.5);
  full.set(1, 2, -0.25);
  CHECK(full.is_spd());
  const MaterialTensor finv = full.inverse();
  // inverse * original == identity
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += finv(r, k) * full(k, c);
      CHECK_THAT(s, Catch::Matchers::WithinAbs(r == c ? 1.0 : 0.0, 1e-14));
    }
  }

  MaterialTensor indefinite = MaterialTensor::diagonal2(1.0, -1.0);
  CHECK_FALSE(indefinite.is_spd());
  CHECK_THROWS_AS(MaterialTensor::diagonal2(0.0, 0.0).inverse(),
                  std::invalid_argument);
}

TEST_CASE("unit-square bilinear element: frozen stiffness and load") {
  // Laplace stiffness of the reference-aligned unit square is
  // (1/6) * [4 -1 -2 -1; -1 4 -1 -2; -2 -1 4 -1; -1 -2 -1 4] and the
  // constant-source load puts f * area / 4 on every corner.
  const std::array<std::array<double, 3>, 4> xc = {
      {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}};
  double ke[8][8];
  double load[8];
  matamg::element_stiffness(2, xc.data(), MaterialTensor::identity(2), 3.0, ke,
                            load);
  const double expected[4][4] = {{4, -1, -2, -1},
                                 {-1, 4, -1, -2},
                                 {-2, -1, 4, -1},
                                 {-1, -2, -1, 4}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      CHECK_THAT(ke[i][j],
                 Catch::Matchers::WithinAbs(expected[i][j] / 6.0, 1e-14));
    CHECK_THAT(load[i], Catch::Matchers::WithinAbs(3.0 * 0.25, 1e-14));
  }
}

TEST_CASE("hex element: zero row sums, symmetry, equidistributed load") {
  const std::array<std::array<double, 3>, 8> xc = {{{0, 0, 0},
                                                    {1, 0, 0},
                                                    {1, 1, 0},
                                                    {0, 1, 0},
                                                    {0, 0, 1},
                                                    {1, 0, 1},
                                                    {1, 1, 1},
                                                    {0, 1, 1}}};
  double ke[8][8];
  double load[8];
  matamg::element_stiffness(3, xc.data(),
                            MaterialTensor::diagonal3(2.0, 1.0, 0.5), 1.0, ke,
                            load);
  for (int i = 0; i < 8; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < 8; ++j) {
      row_sum += ke[i][j];
      CHECK_THAT(ke[i][j], Catch::Matchers::WithinAbs(ke[j][i], 1e-14));
    }
    CHECK_THAT(row_sum, Catch::Matchers::WithinAbs(0.0, 1e-13));
    CHECK_THAT(load[i], Catch::Matchers::WithinAbs(1.0 / 8.0, 1e-14));
  }
  CHECK(ke[0][0] > 0.0);
}

TEST_CASE("degenerate element geometry is rejected") {
  // Clockwise node order flips the Jacobian sign.
  const std::array<std::array<double, 3>, 4> xc = {
      {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}}};
  double ke[8][8];
  double load[8];
  CHECK_THROWS_AS(matamg::element_stiffness(2, xc.data(),
                                            MaterialTensor::identity(2), 1.0,
                                            ke, load),
                  std::invalid_argument);
}

TEST_CASE("two-domain problem: sizes, boundary handling, symmetry") {
  const AssembledProblem p = matamg::two_domain_problem(32, 1.0e4);
  REQUIRE(p.A.n_rows == 33 * 33);
  REQUIRE(p.coords.size() == 1089);
  REQUIRE(p.node_materials.size() == 1089);

  int n_dirichlet = 0;
  for (matamg::index_t i = 0; i < p.A.n_rows; ++i) {
    if (!p.is_dirichlet[i]) continue;
    ++n_dirichlet;
    // Eliminated rows are identity rows with zero right-hand side.
    REQUIRE(p.A.row_offsets[i + 1] - p.A.row_offsets[i] == 1);
    CHECK(p.A.at(i, i) == 1.0);
    CHECK(p.b[i] == 0.0);
  }
  CHECK(n_dirichlet == 4 * 33 - 4);

  // ke[i][j] and ke[j][i] come from independent dot products, so symmetry
  // holds to roundoff relative to the largest (kappa-sized) entries.
  const Eigen::MatrixXd dense = oracles::to_dense(p.A);
  CHECK(oracles::max_abs(dense - dense.transpose()) <=
        1e-12 * oracles::max_abs(dense));

  // Interior source nodes carry a positive load.
  bool any_positive = false;
  for (matamg::index_t i = 0; i < p.A.n_rows; ++i)
    if (!p.is_dirichlet[i] && p.b[i] > 0.0) any_positive = true;
  CHECK(any_positive);
}

TEST_CASE("two-domain nodal tensors average across the interface") {
  const double kappa = 100.0;
  const AssembledProblem p = matamg::two_domain_problem(4, kappa);
  // 5x5 nodes on (-1,1)^2 with spacing 0.5; column ix=2 sits on x=0.
  auto node = [](int ix, int iy) { return iy * 5 + ix; };
  const MaterialTensor& left = p.node_materials[node(1, 2)];
  CHECK(left(0, 0) == 1.0);
  CHECK(left(1, 1) == 1.0);
  const MaterialTensor& right = p.node_materials[node(3, 2)];
  CHECK(right(0, 0) == kappa);
  CHECK(right(1, 1) == 1.0);
  const MaterialTensor& iface = p.node_materials[node(2, 2)];
  CHECK_THAT(iface(0, 0),
             Catch::Matchers::WithinRel(0.5 * (1.0 + kappa), 1e-15));
  CHECK(iface(1, 1) == 1.0);
}

TEST_CASE("annulus frame is orthonormal and the tensor matches it") {
  for (const auto& xy : {std::array<double, 2>{0.75, 0.0},
                         std::array<double, 2>{0.53, -0.41},
                         std::array<double, 2>{-0.6, 0.6}}) {
    const std::array<double, 9> Q = matamg::annulus_frame(xy[0], xy[1]);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += Q[3 * r + k] * Q[3 * c + k];
        CHECK_THAT(s, Catch::Matchers::WithinAbs(r == c ? 1.0 : 0.0, 1e-14));
      }
    }
    const double r = std::sqrt(xy[0] * xy[0] + xy[1] * xy[1]);
    const double kappa = 1.0e4;
    const MaterialTensor t = matamg::annulus_tensor(xy[0], xy[1], kappa);
    REQUIRE(t.is_spd());
    // Conductivity kappa along the tangent, 1 along the radial and axial
    // directions.
    const std::array<double, 3> tangent = {-xy[1] / r, xy[0] / r, 0.0};
    const std::array<double, 3> radial = {xy[0] / r, xy[1] / r, 0.0};
    CHECK_THAT(t.quad_form(tangent), Catch::Matchers::WithinRel(kappa, 1e-12));
    CHECK_THAT(t.quad_form(radial), Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK_THAT(t.quad_form({0.0, 0.0, 1.0}),
               Catch::Matchers::WithinAbs(1.0, 1e-14));
  }
  CHECK_THROWS_AS(matamg::annulus_frame(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("annulus tensor with unit contrast degenerates to the identity") {
  const MaterialTensor t = matamg::annulus_tensor(0.3, -0.8, 1.0);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK_THAT(t(r, c),
                 Catch::Matchers::WithinAbs(r == c ? 1.0 : 0.0, 1e-15));
}

TEST_CASE("annulus problem: node count, boundary surfaces, symmetry") {
  const AssembledProblem p = matamg::annulus_problem(4, 12, 1, 1.0e3);
  REQUIRE(p.A.n_rows == 5 * 12 * 2);
  REQUIRE(p.dim == 3);
  int inner = 0, outer = 0;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    const double r =
        std::hypot(p.coords[i][0], p.coords[i][1]);
    if (p.is_dirichlet[i]) {
      if (std::abs(r - 0.5) < 1e-12) {
        ++inner;
        CHECK(p.b[i] == 1.0);
      } else {
        CHECK_THAT(r, Catch::Matchers::WithinAbs(1.0, 1e-12));
        ++outer;
        CHECK(p.b[i] == 0.0);
      }
    }
  }
  // One full ring of nodes per z-plane on each surface.
  CHECK(inner == 12 * 2);
  CHECK(outer == 12 * 2);
  const Eigen::MatrixXd dense = oracles::to_dense(p.A);
  CHECK(oracles::max_abs(dense - dense.transpose()) <= 1e-12);

  // Reference desk-scale mesh size used by the benchmark studies.
  const AssembledProblem big = matamg::annulus_problem(20, 150, 1, 1.0);
  CHECK(big.A.n_rows == 6300);
}

TEST_CASE("layered stack: equal conductivities collapse to one layer") {
  const AssembledProblem two = matamg::layered_stack_problem(2, 6, 3, {1.0, 1.0});
  const AssembledProblem one = matamg::layered_stack_problem(1, 6, 6, {1.0});
  REQUIRE(two.A.n_rows == one.A.n_rows);
  CHECK(two.A.col_indices == one.A.col_indices);
  CHECK(two.A.values == one.A.values);
  CHECK(two.b == one.b);
}

TEST_CASE("layered stack: Dirichlet only on top and bottom, cycling layers") {
  const AssembledProblem p =
      matamg::layered_stack_problem(4, 5, 2, {10.0, 0.1});
  REQUIRE(p.A.n_rows == 6 * 9);
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    const bool edge = p.coords[i][1] == 0.0 || p.coords[i][1] == 1.0;
    CHECK(static_cast<bool>(p.is_dirichlet[i]) == edge);
  }
  // Node strictly inside layer 0 (y = 1/8 to 2/8 band) sees only c = 10.
  auto node = [](int ix, int iy) { return iy * 6 + ix; };
  CHECK(p.node_materials[node(2, 1)](0, 0) == 10.0);
  // Layer boundary at y = 2/8 averages the two adjacent conductivities.
  CHECK_THAT(p.node_materials[node(2, 2)](0, 0),
             Catch::Matchers::WithinRel(0.5 * (10.0 + 0.1), 1e-15));
  CHECK_THROWS_AS(matamg::layered_stack_problem(1, 1, 1, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(matamg::layered_stack_problem(1, 1, 1, {-1.0}),
                  std::invalid_argument);
}

TEST_CASE("material distance takes the weaker endpoint") {
  const std::array<double, 3> xi = {0.0, 0.0, 0.0};
  const std::array<double, 3> xj = {1.0, 0.0, 0.0};
  const MaterialTensor iso = MaterialTensor::identity(2);
  const MaterialTensor strong = MaterialTensor::diagonal2(4.0, 1.0);
  const MaterialTensor weak = MaterialTensor::diagonal2(0.25, 1.0);
  // Inverse-weighted length: strong conduction shortens, weak lengthens.
  CHECK(matamg::material_distance(xi, xj, iso, iso) == 1.0);
  CHECK(matamg::material_distance(xi, xj, iso, strong) == 1.0);  // max picks 1
  CHECK(matamg::material_distance(xi, xj, iso, weak) == 2.0);
  CHECK(matamg::material_distance(xi, xj, weak, iso) ==
        matamg::material_distance(xi, xj, iso, weak));
}
