#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatpoly/bodies.hpp"
#include "flatpoly/subspace.hpp"

namespace flatpoly {

struct FlatSearchResult {
  Eigen::VectorXd witness;  // ambient coefficients, normalized to q-norm 1
  double ratio = 0.0;       // ||J witness||_p / ||J witness||_q
  std::string method;       // random-sampling | ratio-descent | proof-pipeline
  int iterations = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::vector<double> restart_ratios;
  std::map<std::string, double> diagnostics;
};

// Haar-distributed s-dimensional subspace of R^n (orthonormalized Gaussian
// matrix with positive-diagonal QR convention).
Subspace random_subspace(int n, int s, std::uint64_t seed);

// Orthonormal basis of A cap B via the null space of the stacked complement
// projectors; singular values below rel_threshold * sigma_max count as zero.
// `degenerate` is set when the smallest retained singular value drops below
// 1e-8 (shaky rank decision).
Subspace intersect_subspaces(const Subspace& A, const Subspace& B,
                             double rel_threshold = 1e-10, bool* degenerate = nullptr);

// Minimizes ||J alpha||_p / ||J alpha||_q over alpha in L by multi-start
// projected subgradient descent on the q-norm sphere. p = infinity uses the
// grid sup norm with subgradients at max-attaining nodes, warm-started from
// a smooth p = 16 solve.
FlatSearchResult ratio_minimize(const SpectrumSelection& spectrum, const Subspace& L,
                                double p, double q, int restarts = 16, int iterations = 500,
                                std::uint64_t seed = 1,
                                const std::optional<Eigen::VectorXd>& warm_start = {});

// Constructive trace of the Theorem 1 proof: samples L_{m1} with
// m1 = ceil(lambda n), certifies the random-subspace norm comparison on it,
// intersects with L_{m2}, and returns the diameter witness of the induced
// L_p ball section normalized to q-norm 1.
FlatSearchResult proof_pipeline(const SpectrumSelection& spectrum, const Subspace& L_m2,
                                double p, double q, double lambda, long samples,
                                std::uint64_t seed);

struct Theorem3Row {
  int n = 0;                         // realized spectrum dimension
  double worst_ratio = 0.0;          // max over trial subspaces of the minimized ratio
  double rho = 0.0;                  // endpoint normalizer for (p, q)
  double normalized = 0.0;           // worst_ratio / rho
  std::vector<double> trial_ratios;
};

// The endpoint-loss factor: 1 away from the endpoints, sqrt(log n) when
// exactly one of q = 1 or p = infinity holds, log n when both do.
double rho_n(int n, double p, double q);

// Spectrum of the given manifold with total dimension <= n (exact for odd n
// on the circle).
SpectrumSelection spectrum_for_dim(Manifold manifold, int n);

// For each n: `trials` Haar subspaces of dimension ceil(eps * n), a ratio
// minimization on each, and the worst ratio with its rho_n normalization.
std::vector<Theorem3Row> theorem3_experiment(Manifold manifold, const std::vector<int>& n_list,
                                             double eps, double p, double q, int trials,
                                             std::uint64_t seed, int restarts = 16,
                                             int iterations = 500);

}  // namespace flatpoly
