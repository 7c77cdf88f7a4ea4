#include <doctest.h>

#include <cmath>

#include "flatpoly/norms.hpp"

using namespace flatpoly;

namespace {

// Exact Wallis moment: integral of |sqrt(2) cos|^p over the normalized
// circle equals binom(p, p/2) / 2^{p/2} for even p.
double wallis_power_mean(int p) {
  double binom = 1.0;
  for (int i = 1; i <= p / 2; ++i)
    binom *= static_cast<double>(p / 2 + i) / i;
  return std::pow(binom / std::pow(2.0, p / 2), 1.0 / p);
}

Polynomial cosine_poly() {
  auto spectrum = select_first_blocks(torus_system(1, 1), 2);  // {1, sqrt2 cos, sqrt2 sin}
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(3);
  alpha[1] = 1.0;  // the function sqrt(2) cos(theta)
  return Polynomial{spectrum, alpha};
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("constants have unit norm for every p") {
  auto spectrum = select_first_blocks(torus_system(1, 2), 3);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(spectrum.n);
  alpha[0] = 1.0;
  for (double p : {1.0, 2.0, 4.0, 3.5}) {
    const auto rule = default_rule(spectrum, p);
    CHECK(lp_norm(Polynomial{spectrum, alpha}, p, *rule) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fourth moment of sqrt(2) cos") {
  const Polynomial poly = cosine_poly();
  const auto rule = default_rule(poly.spectrum, 4.0);
  CHECK(lp_norm(poly, 4.0, *rule) ==
        doctest::Approx(std::pow(1.5, 0.25)).epsilon(1e-13));
  CHECK(wallis_power_mean(4) == doctest::Approx(std::pow(1.5, 0.25)));
}

TEST_CASE("sixth moment matches the Wallis oracle") {
  const Polynomial poly = cosine_poly();
  const auto rule = default_rule(poly.spectrum, 6.0);
  CHECK(lp_norm(poly, 6.0, *rule) == doctest::Approx(wallis_power_mean(6)).epsilon(1e-13));
}

TEST_CASE("single basis slots have unit L2 norm") {
  auto spectrum = select_first_blocks(torus_system(1, 4), 5);
  const auto rule = default_rule(spectrum, 2.0);
  for (int k = 0; k < spectrum.n; ++k) {
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(spectrum.n);
    alpha[k] = 1.0;
    CHECK(lp_norm(Polynomial{spectrum, alpha}, 2.0, *rule) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("even p requires sufficient exactness") {
  auto spectrum = select_first_blocks(torus_system(1, 8), 9);
  const QuadratureRule coarse = torus_rule(1, 9);  // exact only for products
  Eigen::VectorXd alpha = Eigen::VectorXd::Ones(spectrum.n);
  CHECK_THROWS_AS(lp_norm(Polynomial{spectrum, alpha}, 4.0, coarse), std::invalid_argument);
}

TEST_CASE("non-even p demands an approximate-flagged rule") {
  auto spectrum = select_first_blocks(torus_system(1, 2), 3);
  const QuadratureRule exact = exact_product_rule(spectrum, 8);
  Eigen::VectorXd alpha = Eigen::VectorXd::Ones(spectrum.n);
  CHECK_THROWS_AS(lp_norm(Polynomial{spectrum, alpha}, 3.0, exact), std::invalid_argument);
  const QuadratureRule loose = oversampled_rule(spectrum);
  CHECK(lp_norm(Polynomial{spectrum, alpha}, 3.0, loose) > 0.0);
}

TEST_CASE("parseval ties the induced 2-norm to the euclidean norm") {
  auto spectrum = select_prefix_dim(torus_system(2, 3), 20);
  const auto rule = default_rule(spectrum, 2.0);
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd alpha = rng.gaussian_vector(spectrum.n);
    CHECK(std::abs(induced_norm(spectrum, alpha, 2.0, *rule) - alpha.norm()) < 1e-10);
  }
}

TEST_CASE("sup norm of the degree-1 kernel column") {
  auto spectrum = select_first_blocks(torus_system(1, 1), 2);  // n = 3
  const Eigen::VectorXd alpha = kernel_column(spectrum, {0.0, 0.0, 0.0});
  const LinfResult res = linf_norm(Polynomial{spectrum, alpha});
  CHECK(res.value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("sup norm of sqrt(2) cos") {
  const LinfResult res = linf_norm(cosine_poly());
  CHECK(res.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(res.uncertainty >= 0.0);
}

TEST_CASE("sup norm dominates L8 on random polynomials") {
  auto spectrum = select_first_blocks(torus_system(1, 6), 7);
  const auto rule = default_rule(spectrum, 8.0);
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const Eigen::VectorXd alpha = rng.gaussian_vector(spectrum.n);
    const Polynomial poly{spectrum, alpha};
    CHECK(linf_norm(poly).value >= lp_norm(poly, 8.0, *rule) - 1e-10);
  }
}

TEST_CASE("norms are nondecreasing in p under the normalized measure") {
  auto spectrum = select_first_blocks(torus_system(1, 5), 6);
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    const Eigen::VectorXd alpha = rng.gaussian_vector(spectrum.n);
    double prev = 0.0;
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
      const double v = induced_norm(spectrum, alpha, p);
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
    CHECK(linf_norm(Polynomial{spectrum, alpha}).value >= prev - 1e-9);
  }
}

TEST_CASE("doubling an already-exact rule leaves lp_norm unchanged") {
  auto spectrum = select_first_blocks(torus_system(1, 4), 5);
  const QuadratureRule r1 = exact_product_rule(spectrum, 4);
  QuadratureRule r2 = torus_rule(1, 2 * static_cast<int>(r1.nodes.size()));
  Rng rng(24);
  const Eigen::VectorXd alpha = rng.gaussian_vector(spectrum.n);
  CHECK(std::abs(lp_norm(Polynomial{spectrum, alpha}, 4.0, r1) -
                 lp_norm(Polynomial{spectrum, alpha}, 4.0, r2)) < 1e-10);
}

TEST_CASE("nikolskii bound at (inf, 2) with the kernel column extremal") {
  auto spectrum = select_first_blocks(torus_system(1, 16), 17);  // n = 33
  const NikolskiiReport rep = nikolskii_check(spectrum, kInf, 2.0, 500, 25);
  const double root_n = std::sqrt(33.0);
  CHECK(rep.bound == doctest::Approx(root_n).epsilon(1e-12));
  CHECK(rep.max_ratio <= root_n + 1e-9);
  CHECK(rep.kernel_ratio == doctest::Approx(root_n).epsilon(1e-6));
  CHECK(rep.passed);
}

TEST_CASE("nikolskii bound at (inf, 1)") {
  auto spectrum = select_first_blocks(torus_system(1, 8), 9);  // n = 17
  const NikolskiiReport rep = nikolskii_check(spectrum, kInf, 1.0, 2000, 250);
  CHECK(rep.bound == doctest::Approx(17.0));
  CHECK(rep.max_ratio <= 17.0 + 1e-9);
  CHECK(rep.kernel_ratio <= 17.0 + 1e-9);
  CHECK(rep.passed);
}

TEST_CASE("quadrature weights realize a probability measure") {
  for (const QuadratureRule& rule :
       {torus_rule(1, 37), torus_rule(2, 9), sphere_rule(11, 23)}) {
    CHECK(std::abs(rule.weights.sum() - 1.0) < 1e-12);
    CHECK(rule.weights.minCoeff() > 0.0);
  }
}

TEST_CASE("nikolskii with p = q is the trivial bound") {
  auto spectrum = select_first_blocks(torus_system(1, 4), 5);
  const NikolskiiReport rep = nikolskii_check(spectrum, 4.0, 4.0, 100, 26);
  CHECK(rep.bound == doctest::Approx(1.0));
  CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.passed);
}

TEST_CASE("nikolskii with p < q has exponent zero") {
  auto spectrum = select_first_blocks(torus_system(1, 8), 9);
  const NikolskiiReport rep = nikolskii_check(spectrum, 2.0, kInf, 200, 27);
  CHECK(rep.bound == doctest::Approx(1.0));
  CHECK(rep.max_ratio <= 1.0 + 1e-9);
  CHECK(rep.passed);
}

}  // TEST_SUITE
