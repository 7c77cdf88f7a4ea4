#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "flatpoly/flatsearch.hpp"
#include "flatpoly/norms.hpp"

using namespace flatpoly;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

double witness_ratio(const SpectrumSelection& spectrum, const Eigen::VectorXd& alpha,
                     double p, double q) {
  const double np_ = (p == kInf) ? NormBody::induced(spectrum, kInf).norm(alpha)
                                 : induced_norm(spectrum, alpha, p);
  return np_ / induced_norm(spectrum, alpha, q);
}

}  // namespace

TEST_SUITE("flatsearch") {

TEST_CASE("random subspaces have orthonormal bases") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Subspace L = random_subspace(12, 5, seed);
    const Eigen::MatrixXd gram = L.basis.transpose() * L.basis;
    CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("a full-dimensional subspace has zero projection residual") {
  const Subspace L = random_subspace(7, 7, 4);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = rng.gaussian_vector(7);
    CHECK(L.residual(x) < 1e-10 * x.norm());
  }
}

TEST_CASE("first-column coordinates follow the sphere law") {
  const int n = 6, count = 400;
  std::vector<double> qr_coords, oracle;
  Rng rng(6);
  for (int i = 0; i < count; ++i) {
    qr_coords.push_back(random_subspace(n, 3, 1000 + static_cast<std::uint64_t>(i)).basis(0, 0));
    oracle.push_back(rng.sphere_vector(n)[0]);
  }
  // Two-sample KS at alpha = 0.001: c = 1.95.
  const double crit = 1.95 * std::sqrt(2.0 / count);
  CHECK(ks_statistic(qr_coords, oracle) < crit);
}

TEST_CASE("subspace intersection recovers shared directions") {
  const int n = 10;
  const Subspace A = random_subspace(n, 7, 7);
  const Subspace B = random_subspace(n, 6, 8);
  bool degenerate = false;
  const Subspace C = intersect_subspaces(A, B, 1e-10, &degenerate);
  CHECK(C.dim() == 3);  // 7 + 6 - 10
  for (int j = 0; j < C.dim(); ++j) {
    CHECK(A.residual(C.basis.col(j)) < 1e-8);
    CHECK(B.residual(C.basis.col(j)) < 1e-8);
  }
}

TEST_CASE("disjoint subspaces are rejected") {
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Identity(4, 1);
  Eigen::MatrixXd e2 = Eigen::MatrixXd::Zero(4, 1);
  e2(1, 0) = 1.0;
  CHECK_THROWS_AS(intersect_subspaces(Subspace{e1}, Subspace{e2}), std::invalid_argument);
}

TEST_CASE("full-space minimization finds the flat constants") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 33);
  const FlatSearchResult res =
      ratio_minimize(spectrum, full_space(33), 4.0, 2.0, 8, 200, 9);
  CHECK(res.ratio >= 1.0 - 1e-8);
  CHECK(res.ratio <= 1.0 + 1e-4);
}

TEST_CASE("kernel-column span pins the Dirichlet ratio") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 33);  // m = 16
  const Eigen::VectorXd col = kernel_column(spectrum, origin_point(Manifold::Torus1));
  Subspace L{col.normalized()};

  // || D ||_4^4 = n^2 + 2 sum_{i<=2m} i^2 for the Dirichlet kernel, n = 2m+1.
  const double m = 16.0, n = 33.0;
  const double l4_4 = n * n + 2.0 * (2.0 * m) * (2.0 * m + 1.0) * (4.0 * m + 1.0) / 6.0;
  const double expected = std::pow(l4_4, 0.25) / std::sqrt(n);

  const FlatSearchResult res = ratio_minimize(spectrum, L, 4.0, 2.0, 2, 50, 10);
  CHECK(res.ratio == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("descent beats pure random search on a half-dimensional subspace") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 65);
  const Subspace L = random_subspace(65, 33, 11);
  const FlatSearchResult res = ratio_minimize(spectrum, L, 4.0, 2.0, 8, 300, 12);

  const NodeBasis table = NodeBasis::build(spectrum, *default_rule(spectrum, 4.0));
  const Eigen::MatrixXd m = table.values() * L.basis;
  Rng rng(13);
  double best = 1e300;
  for (int i = 0; i < 200000; ++i) {
    const Eigen::VectorXd u = rng.sphere_vector(33);
    const Eigen::VectorXd t = m * u;
    double acc = 0.0;
    for (long r = 0; r < t.size(); ++r)
      acc += table.weights()[r] * std::pow(t[r], 4);
    best = std::min(best, std::pow(acc, 0.25));
  }
  CHECK(res.ratio <= best + 1e-9);
}

TEST_CASE("witness ratios are reproducible from coefficients") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 17);
  const Subspace L = random_subspace(17, 6, 14);
  for (double p : {4.0, kInf}) {
    const FlatSearchResult res = ratio_minimize(spectrum, L, p, 2.0, 4, 150, 15);
    CHECK(L.residual(res.witness) < 1e-8);
    CHECK(witness_ratio(spectrum, res.witness, p, 2.0) ==
          doctest::Approx(res.ratio).epsilon(1e-8));
    CHECK(res.ratio >= 1.0 - 1e-8);
    CHECK(res.ratio <= *std::min_element(res.restart_ratios.begin(),
                                         res.restart_ratios.end()) + 1e-8);
  }
}

TEST_CASE("identical seeds give identical witnesses") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 17);
  const Subspace L = random_subspace(17, 8, 16);
  const FlatSearchResult a = ratio_minimize(spectrum, L, 4.0, 2.0, 4, 100, 17);
  const FlatSearchResult b = ratio_minimize(spectrum, L, 4.0, 2.0, 4, 100, 17);
  CHECK(a.ratio == b.ratio);
  CHECK((a.witness - b.witness).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("warm starts make the search monotone under subspace growth") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 17);
  const Subspace L = random_subspace(17, 5, 18);
  const FlatSearchResult small = ratio_minimize(spectrum, L, 4.0, 2.0, 4, 150, 19);

  // Extend L by two orthonormalized random directions.
  Rng rng(20);
  Eigen::MatrixXd ext(17, 7);
  ext.leftCols(5) = L.basis;
  for (int j = 5; j < 7; ++j) {
    Eigen::VectorXd v = rng.gaussian_vector(17);
    for (int i = 0; i < j; ++i) v -= ext.col(i).dot(v) * ext.col(i);
    ext.col(j) = v.normalized();
  }
  const FlatSearchResult big =
      ratio_minimize(spectrum, Subspace{ext}, 4.0, 2.0, 4, 150, 21, small.witness);
  CHECK(big.ratio <= small.ratio + 1e-6);
}

TEST_CASE("invalid exponent ranges are rejected") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 9);
  const Subspace L = full_space(9);
  CHECK_THROWS_AS(ratio_minimize(spectrum, L, 2.0, 4.0, 2, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(ratio_minimize(spectrum, L, 2.0, 0.5, 2, 10, 1), std::invalid_argument);
}

TEST_CASE("pipeline reduces to the diameter witness on the full space") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 17);
  const FlatSearchResult res =
      proof_pipeline(spectrum, full_space(17), 4.0, 2.0, 0.5, 2000, 22);
  CHECK(res.diagnostics.at("m3") == doctest::Approx(9.0));  // ceil(0.5 * 17)
  CHECK(res.ratio >= 1.0 - 1e-8);
  CHECK(witness_ratio(spectrum, res.witness, 4.0, 2.0) ==
        doctest::Approx(res.ratio).epsilon(1e-8));
}

TEST_CASE("pipeline on a generic subspace stays comparable to direct descent") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 65);
  const Subspace L2 = random_subspace(65, 48, 23);
  const FlatSearchResult pipe = proof_pipeline(spectrum, L2, 4.0, 2.0, 0.5, 2000, 24);
  CHECK(pipe.diagnostics.at("m3") >= 16.0);  // 33 + 48 - 65
  CHECK(pipe.ratio >= 1.0 - 1e-8);

  const FlatSearchResult direct = ratio_minimize(spectrum, L2, 4.0, 2.0, 8, 300, 25);
  CHECK(pipe.ratio <= 10.0 * direct.ratio);

  // Eq. (0) certificate against the Levy-mean prediction.
  CHECK(pipe.diagnostics.at("eq0_constant") <=
        2.0 * pipe.diagnostics.at("eq0_levy_prediction"));
}

TEST_CASE("pipeline rejects guaranteed-empty intersections") {
  const SpectrumSelection spectrum = spectrum_for_dim(Manifold::Torus1, 17);
  const Subspace L2 = random_subspace(17, 4, 26);
  CHECK_THROWS_AS(proof_pipeline(spectrum, L2, 4.0, 2.0, 0.5, 1000, 27),
                  std::invalid_argument);
}

TEST_CASE("rho_n covers the four endpoint cases") {
  CHECK(rho_n(100, 4.0, 2.0) == doctest::Approx(1.0));
  CHECK(rho_n(100, 4.0, 1.0) == doctest::Approx(std::sqrt(std::log(100.0))));
  CHECK(rho_n(100, kInf, 2.0) == doctest::Approx(std::sqrt(std::log(100.0))));
  CHECK(rho_n(100, kInf, 1.0) == doctest::Approx(std::log(100.0)));
}

TEST_CASE("experiment rows stay above one and carry the normalizer") {
  const auto rows =
      theorem3_experiment(Manifold::Torus1, {17, 33}, 0.5, 4.0, 2.0, 2, 28, 4, 120);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.rho == doctest::Approx(1.0));
    CHECK(row.worst_ratio >= 1.0 - 1e-8);
    CHECK(row.trial_ratios.size() == 2);
    for (double r : row.trial_ratios) CHECK(r <= row.worst_ratio);
  }
}

TEST_CASE("spectrum_for_dim realizes the requested dimensions") {
  CHECK(spectrum_for_dim(Manifold::Torus1, 33).n == 33);
  CHECK(spectrum_for_dim(Manifold::Torus1, 257).n == 257);
  CHECK(spectrum_for_dim(Manifold::Torus2, 145).n <= 145);
  CHECK(spectrum_for_dim(Manifold::Sphere2, 441).n == 441);
}

}  // TEST_SUITE
