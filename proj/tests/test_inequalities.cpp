#include <doctest.h>

#include <cmath>

#include "flatpoly/flatsearch.hpp"
#include "flatpoly/inequalities.hpp"

using namespace flatpoly;

namespace {

NormBody seeded_ellipsoid(int n, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  const Subspace rot = random_subspace(n, n, seed + 1);
  Eigen::VectorXd diag(n);
  for (int i = 0; i < n; ++i) diag[i] = rng.uniform(lo, hi);
  return NormBody::ellipsoid(rot.basis * diag.asDiagonal() * rot.basis.transpose());
}

}  // namespace

TEST_SUITE("inequalities") {

TEST_CASE("urysohn is an equality on the euclidean ball") {
  const InequalityReport rep = check_urysohn(NormBody::lp(3, 2.0), 20000, 20000, 80);
  CHECK(rep.passed);
  CHECK(rep.lhs == doctest::Approx(1.0));
  CHECK(rep.rhs == doctest::Approx(1.0));
  CHECK(std::abs(rep.slack) <= rep.stderr_budget + 1e-9);
}

TEST_CASE("urysohn on a volume-preserving ellipsoid") {
  // Semi-axes (2, 1/2): the volume stays pi, the dual mean width grows.
  Eigen::MatrixXd shape = Eigen::Vector2d(0.25, 4.0).asDiagonal();
  const InequalityReport rep = check_urysohn(NormBody::ellipsoid(shape), 100000, 50000, 81);
  CHECK(rep.passed);
  CHECK(std::abs(rep.lhs - 1.0) <= 0.02);
  // 1-D quadrature oracle for the mean of sqrt(4 cos^2 + sin^2/4).
  double acc = 0.0;
  const int grid = 200000;
  for (int i = 0; i < grid; ++i) {
    const double t = 2.0 * M_PI * i / grid;
    acc += std::sqrt(4.0 * std::cos(t) * std::cos(t) + 0.25 * std::sin(t) * std::sin(t));
  }
  const double oracle = acc / grid;
  CHECK(rep.rhs == doctest::Approx(oracle).epsilon(1e-3));
  CHECK(rep.rhs > 1.0);
}

TEST_CASE("urysohn on the cross-polytope") {
  const InequalityReport rep = check_urysohn(NormBody::lp(3, 1.0), 100000, 20000, 82);
  CHECK(rep.passed);
}

TEST_CASE("santalo product of the ball is exactly the ball product") {
  const InequalityReport rep = check_santalo(NormBody::lp(3, 2.0), std::nullopt, 20000, 83);
  CHECK(rep.passed);
  CHECK(rep.diagnostics.at("ratio") == doctest::Approx(1.0));
}

TEST_CASE("santalo ratio of the square is 8/pi^2") {
  const InequalityReport rep = check_santalo(NormBody::lp(2, kInf), std::nullopt, 100000, 84);
  CHECK(rep.passed);
  CHECK(std::abs(rep.lhs - 8.0) <= rep.stderr_budget);
  CHECK(rep.diagnostics.at("ratio") ==
        doctest::Approx(8.0 / (M_PI * M_PI)).epsilon(0.02));
}

TEST_CASE("santalo is invariant under linear images of the ball") {
  for (std::uint64_t seed : {85ULL, 86ULL, 87ULL}) {
    const InequalityReport rep =
        check_santalo(seeded_ellipsoid(3, seed, 0.4, 2.5), std::nullopt, 60000, seed);
    CHECK(rep.passed);
    CHECK(std::abs(rep.diagnostics.at("ratio") - 1.0) <=
          3.0 * rep.stderr_budget / rep.rhs + 0.02);
  }
}

TEST_CASE("polar containment is tight on ball sections") {
  const InequalityReport rep =
      check_polar_containment(NormBody::lp(4, 2.0), random_subspace(4, 2, 88), 40000, 88);
  CHECK(rep.passed);
  CHECK(rep.lhs == doctest::Approx(M_PI).epsilon(0.01));  // 4 * pi / diam^2 with diam 2
  CHECK(rep.rhs == doctest::Approx(M_PI).epsilon(0.05));
}

TEST_CASE("polar containment on the square") {
  const InequalityReport rep =
      check_polar_containment(NormBody::lp(2, kInf), full_space(2), 100000, 89);
  CHECK(rep.passed);
  CHECK(rep.lhs == doctest::Approx(M_PI / 2.0).epsilon(1e-6));
  CHECK(rep.rhs == doctest::Approx(2.0).epsilon(0.05));
  CHECK(rep.diagnostics.at("diameter") == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("polar containment on a random ellipsoid section") {
  const InequalityReport rep = check_polar_containment(seeded_ellipsoid(4, 90, 0.5, 2.0),
                                                       random_subspace(4, 3, 91), 60000, 92);
  CHECK(rep.passed);
}

TEST_CASE("central sections dominate parallel sections of the ball") {
  Subspace L{Eigen::MatrixXd::Identity(3, 2)};
  Eigen::VectorXd y = Eigen::VectorXd::Zero(3);
  SUBCASE("zero offset is an equality") {
    const InequalityReport rep =
        check_central_section_max(NormBody::lp(3, 2.0), L, {y}, 40000, 93);
    CHECK(rep.passed);
    CHECK(std::abs(rep.slack) <= rep.stderr_budget + 1e-9);
  }
  SUBCASE("offset 0.5 e3 shrinks the disk by 3/4") {
    y[2] = 0.5;
    const InequalityReport rep =
        check_central_section_max(NormBody::lp(3, 2.0), L, {y}, 60000, 94);
    CHECK(rep.passed);
    CHECK(rep.lhs / rep.rhs == doctest::Approx(0.75).epsilon(0.05));
  }
}

TEST_CASE("central sections of the cross-polytope along a diagonal plane") {
  Eigen::MatrixXd cols(3, 2);
  cols.col(0) = Eigen::Vector3d(1, 1, 0).normalized();
  cols.col(1) = Eigen::Vector3d(0, 0, 1);
  Subspace L{cols};
  Eigen::VectorXd y = Eigen::Vector3d(1, -1, 0).normalized() * 0.15;
  const InequalityReport rep =
      check_central_section_max(NormBody::lp(3, 1.0), L, {y, 2.0 * y}, 60000, 95);
  CHECK(rep.passed);
}

TEST_CASE("offsets must be orthogonal to the section") {
  Subspace L{Eigen::MatrixXd::Identity(3, 2)};
  Eigen::VectorXd bad = Eigen::Vector3d(1.0, 0.0, 0.0);
  CHECK_THROWS_AS(check_central_section_max(NormBody::lp(3, 2.0), L, {bad}, 1000, 96),
                  std::invalid_argument);
}

TEST_CASE("bourgain-milman ratio of the ball is one") {
  const InequalityReport rep = check_bourgain_milman(NormBody::lp(3, 2.0), 20000, 97, 0.5);
  CHECK(rep.passed);
  CHECK(rep.rhs == doctest::Approx(1.0));
}

TEST_CASE("bourgain-milman ratio of the square is sqrt(8)/pi") {
  const InequalityReport rep = check_bourgain_milman(NormBody::lp(2, kInf), 100000, 98, 0.5);
  CHECK(rep.passed);
  CHECK(rep.rhs == doctest::Approx(std::sqrt(8.0) / M_PI).epsilon(0.02));
}

TEST_CASE("bourgain-milman ratio of the 3-cube") {
  const InequalityReport rep = check_bourgain_milman(NormBody::lp(3, kInf), 100000, 99, 0.5);
  CHECK(rep.passed);
  const double expected = std::pow(32.0 / 3.0, 1.0 / 3.0) / std::pow(4.0 * M_PI / 3.0, 2.0 / 3.0);
  CHECK(rep.rhs == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("a failing screen with noisy volumes reports inconclusive") {
  const InequalityReport rep = check_bourgain_milman(NormBody::lp(2, kInf), 60, 100, 1.5);
  CHECK_FALSE(rep.passed);
  CHECK(rep.status == CheckStatus::Inconclusive);
}

TEST_CASE("a failing screen with tight volumes reports fail") {
  const InequalityReport rep = check_bourgain_milman(NormBody::lp(2, kInf), 200000, 101, 1.5);
  CHECK_FALSE(rep.passed);
  CHECK(rep.status == CheckStatus::Fail);
}

TEST_CASE("volume lower bound on the ball") {
  const InequalityReport rep = check_volume_lower_bound(NormBody::lp(3, 2.0), 20000, 102);
  CHECK(rep.passed);
}

TEST_CASE("volume lower bound on the shrunken cube") {
  const NormBody body = NormBody::lp(3, kInf).scaled(1.0 / std::sqrt(3.0));
  const InequalityReport rep = check_volume_lower_bound(body, 100000, 103);
  CHECK(rep.passed);
  CHECK(rep.rhs == doctest::Approx(std::pow(2.0 / std::sqrt(3.0), 3)).epsilon(0.05));
}

TEST_CASE("volume lower bound on a random ellipsoid inside the ball") {
  const NormBody body = seeded_ellipsoid(4, 104, 1.0, 4.0);
  const InequalityReport rep = check_volume_lower_bound(body, 60000, 105);
  CHECK(rep.passed);
}

TEST_CASE("bodies sticking out of the unit ball are rejected") {
  CHECK_THROWS_AS(check_volume_lower_bound(NormBody::lp(3, kInf), 1000, 106),
                  std::invalid_argument);
}

TEST_CASE("omega diagonal and pinned values") {
  for (int n = 1; n <= 200; ++n) CHECK(omega(n, n).paper_value == doctest::Approx(1.0));
  CHECK(omega(2, 1).paper_value == doctest::Approx(4.0 / M_PI).epsilon(1e-12));
  CHECK(omega(2, 1).corrected_value == doctest::Approx(M_PI / 4.0).epsilon(1e-12));

  // Independent oracle via explicit log sums: omega(1000, 500)^500 is the
  // central binomial coefficient C(500, 250).
  double log_binom = 0.0;
  for (int i = 1; i <= 250; ++i)
    log_binom += std::log(250.0 + i) - std::log(static_cast<double>(i));
  const OmegaValue v = omega(1000, 500);
  CHECK(v.paper_value == doctest::Approx(std::exp(log_binom / 500.0)).epsilon(1e-10));
  CHECK(std::abs(v.paper_value - 2.0) < 0.02);
  CHECK(v.corrected_value == doctest::Approx(1.0 / v.paper_value).epsilon(1e-12));
}

TEST_CASE("omega rejects m > n") {
  CHECK_THROWS_AS(omega(3, 4), std::invalid_argument);
}

TEST_CASE("reports are bit-reproducible given the seed") {
  const InequalityReport a = check_santalo(NormBody::lp(2, 1.0), std::nullopt, 20000, 107);
  const InequalityReport b = check_santalo(NormBody::lp(2, 1.0), std::nullopt, 20000, 107);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.inputs_digest == b.inputs_digest);
}

}  // TEST_SUITE
