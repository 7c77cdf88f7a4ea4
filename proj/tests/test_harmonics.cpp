#include <doctest.h>

#include <cmath>

#include "flatpoly/harmonics.hpp"
#include "flatpoly/quadrature.hpp"

using namespace flatpoly;

namespace {

std::vector<Coord> sample_points(Manifold m, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Coord> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(random_point(m, rng));
  return pts;
}

}  // namespace

TEST_SUITE("harmonics") {

TEST_CASE("circle block values at the origin") {
  auto sys = torus_system(1, 4);
  const Eigen::VectorXd v = sys->evaluate_block(2, {0.0, 0.0, 0.0});
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(v[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sys->evaluate_block(0, {0.3, 0.0, 0.0})[0] == doctest::Approx(1.0));
}

TEST_CASE("sphere constants and degree-1 block at the north pole") {
  auto sys = sphere_system(3);
  CHECK(sys->evaluate_block(0, {1.1, 0.3, 0.0})[0] == doctest::Approx(1.0));
  const Eigen::VectorXd v = sys->evaluate_block(1, {0.0, 0.0, 0.0});
  REQUIRE(v.size() == 3);
  CHECK(v.squaredNorm() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("block structure carries true multiplicities") {
  auto sys = torus_system(2, 4);
  // |k|^2 = 5 has representatives (1,2),(2,1),(1,-2),(2,-1): dimension 8.
  bool found = false;
  for (int j = 0; j < sys->block_count(); ++j) {
    if (sys->block(j).eigenvalue == 5.0) {
      found = true;
      CHECK(sys->block(j).dim == 8);
    }
  }
  CHECK(found);
}

TEST_CASE("addition theorem on the circle") {
  auto spectrum = select_first_blocks(torus_system(1, 8), 9);
  const auto rep = class_k_verify(spectrum, sample_points(Manifold::Torus1, 1000, 10), 1e-12);
  CHECK(rep.ok);
  CHECK(rep.max_deviation < 1e-12);
}

TEST_CASE("addition theorem on T^2 at eigenvalue 5") {
  auto sys = torus_system(2, 3);
  int block5 = -1;
  for (int j = 0; j < sys->block_count(); ++j)
    if (sys->block(j).eigenvalue == 5.0) block5 = j;
  REQUIRE(block5 >= 0);
  std::vector<int> idx{block5};
  auto spectrum = select_blocks(sys, idx);
  const auto rep = class_k_verify(spectrum, sample_points(Manifold::Torus2, 300, 11), 1e-12);
  CHECK(rep.ok);
}

TEST_CASE("addition theorem on the sphere up to degree 20") {
  auto spectrum = select_first_blocks(sphere_system(20), 21);
  const auto rep = class_k_verify(spectrum, sample_points(Manifold::Sphere2, 500, 12), 1e-8);
  CHECK(rep.ok);
  CHECK(rep.max_deviation < 1e-8);
}

TEST_CASE("kernel diagonal equals the spectrum dimension") {
  auto spectrum = select_first_blocks(torus_system(1, 5), 6);  // n = 11
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Coord x = random_point(Manifold::Torus1, rng);
    CHECK(kernel(spectrum, x, x) == doctest::Approx(11.0).epsilon(1e-12));
  }
}

TEST_CASE("circle kernel is the Dirichlet kernel") {
  auto spectrum = select_first_blocks(torus_system(1, 1), 2);  // m = 1, n = 3
  CHECK(kernel(spectrum, {M_PI, 0.0, 0.0}, {0.0, 0.0, 0.0}) ==
        doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("sphere kernel at orthogonal points, degrees {0,1}") {
  auto spectrum = select_first_blocks(sphere_system(1), 2);
  // North pole vs a point on the equator: cos(gamma) = 0, K = 1 + 3*0.
  CHECK(kernel(spectrum, {0.0, 0.0, 0.0}, {M_PI / 2, 1.0, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel sup bound over random pairs") {
  auto spectrum = select_first_blocks(torus_system(1, 16), 17);  // n = 33
  Rng rng(14);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Coord x = random_point(Manifold::Torus1, rng);
    const Coord y = random_point(Manifold::Torus1, rng);
    worst = std::max(worst, std::abs(kernel(spectrum, x, y)));
  }
  CHECK(worst <= spectrum.n + 1e-9);
}

TEST_CASE("kernel reproducing identity") {
  Rng rng(15);
  SUBCASE("circle, m = 2") {
    auto spectrum = select_first_blocks(torus_system(1, 2), 3);
    std::vector<std::pair<Coord, Coord>> pairs;
    for (int i = 0; i < 50; ++i)
      pairs.emplace_back(random_point(Manifold::Torus1, rng),
                         random_point(Manifold::Torus1, rng));
    CHECK(kernel_reproducing_check(spectrum, exact_product_rule(spectrum, 2), pairs) < 1e-10);
  }
  SUBCASE("sphere, degrees <= 3") {
    auto spectrum = select_first_blocks(sphere_system(3), 4);
    std::vector<std::pair<Coord, Coord>> pairs;
    for (int i = 0; i < 50; ++i)
      pairs.emplace_back(random_point(Manifold::Sphere2, rng),
                         random_point(Manifold::Sphere2, rng));
    CHECK(kernel_reproducing_check(spectrum, exact_product_rule(spectrum, 2), pairs) < 1e-8);
  }
  SUBCASE("diagonal pairs reproduce n") {
    auto spectrum = select_first_blocks(torus_system(1, 3), 4);
    const Coord x{1.234, 0.0, 0.0};
    CHECK(kernel_reproducing_check(spectrum, exact_product_rule(spectrum, 2), {{x, x}}) < 1e-10);
  }
}

TEST_CASE("inexact quadrature is rejected by the reproducing check") {
  auto spectrum = select_first_blocks(torus_system(1, 8), 9);
  const QuadratureRule coarse = torus_rule(1, 4);
  CHECK_THROWS_AS(kernel_reproducing_check(spectrum, coarse, {}), std::invalid_argument);
}

TEST_CASE("quadrature Gram matrix is the identity") {
  SUBCASE("T^2") {
    auto spectrum = select_prefix_dim(torus_system(2, 4), 40);
    const NodeBasis nb = NodeBasis::build(spectrum, exact_product_rule(spectrum, 2));
    const Eigen::MatrixXd gram =
        nb.values().transpose() * nb.weights().asDiagonal() * nb.values();
    CHECK((gram - Eigen::MatrixXd::Identity(spectrum.n, spectrum.n)).cwiseAbs().maxCoeff() <
          1e-10);
  }
  SUBCASE("sphere degrees <= 8") {
    auto spectrum = select_first_blocks(sphere_system(8), 9);
    const NodeBasis nb = NodeBasis::build(spectrum, exact_product_rule(spectrum, 2));
    const Eigen::MatrixXd gram =
        nb.values().transpose() * nb.weights().asDiagonal() * nb.values();
    CHECK((gram - Eigen::MatrixXd::Identity(spectrum.n, spectrum.n)).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("translation invariance of the torus kernel") {
  auto spectrum = select_prefix_dim(torus_system(2, 3), 25);
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    Coord x = random_point(Manifold::Torus2, rng);
    Coord y = random_point(Manifold::Torus2, rng);
    const Coord shift = random_point(Manifold::Torus2, rng);
    const double k0 = kernel(spectrum, x, y);
    for (int c = 0; c < 2; ++c) {
      x[static_cast<std::size_t>(c)] += shift[static_cast<std::size_t>(c)];
      y[static_cast<std::size_t>(c)] += shift[static_cast<std::size_t>(c)];
    }
    CHECK(kernel(spectrum, x, y) == doctest::Approx(k0).epsilon(1e-9));
  }
}

TEST_CASE("rotation invariance of the sphere kernel") {
  auto spectrum = select_first_blocks(sphere_system(6), 7);
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const Coord x = random_point(Manifold::Sphere2, rng);
    const Coord y = random_point(Manifold::Sphere2, rng);
    const double cosg = std::cos(x[0]) * std::cos(y[0]) +
                        std::sin(x[0]) * std::sin(y[0]) * std::cos(x[1] - y[1]);
    // The matched pair: north pole against a point at colatitude gamma.
    const double k1 = kernel(spectrum, x, y);
    const double k2 = kernel(spectrum, {0.0, 0.0, 0.0},
                             {std::acos(std::clamp(cosg, -1.0, 1.0)), 0.7, 0.0});
    CHECK(k1 == doctest::Approx(k2).epsilon(1e-8));
  }
}

TEST_CASE("eigenvalues are nondecreasing and start at zero") {
  for (auto sys : {torus_system(1, 6), torus_system(2, 3), torus_system(3, 2)}) {
    CHECK(sys->block(0).eigenvalue == 0.0);
    CHECK(sys->block(0).dim == 1);
    for (int j = 1; j < sys->block_count(); ++j)
      CHECK(sys->block(j).eigenvalue > sys->block(j - 1).eigenvalue);
  }
  auto sph = sphere_system(10);
  CHECK(sph->block(5).eigenvalue == doctest::Approx(30.0));
  CHECK(sph->block(5).dim == 11);
}

TEST_CASE("spectrum selection validates its inputs") {
  auto sys = torus_system(1, 4);
  CHECK_THROWS_AS(select_blocks(sys, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(select_blocks(sys, {}), std::invalid_argument);
  CHECK_THROWS_AS(sys->block(99), std::out_of_range);
  const auto spectrum = select_prefix_dim(sys, 6);  // blocks 0,1,2 -> n = 5
  CHECK(spectrum.n == 5);
}

}  // TEST_SUITE
