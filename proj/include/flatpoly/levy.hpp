#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "flatpoly/bodies.hpp"

namespace flatpoly {

struct LevyMeanEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  std::string body_digest;
  std::uint64_t seed = 0;
};

// count i.i.d. uniform points on S^{n-1}, one per column; deterministic
// given the seed and independent of any chunking schedule.
Eigen::MatrixXd sphere_sample(int n, long count, std::uint64_t seed);

// Monte Carlo Levy mean: the average of the body's norm over the uniform
// sphere measure.
LevyMeanEstimate levy_mean(const NormBody& body, long samples, std::uint64_t seed);

struct Theorem2Row {
  int n = 0;
  double p = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double normalized = 0.0;  // mean / sqrt(p), or mean / sqrt(log n) at p = inf
};

// Levy means of the induced L_p coefficient norms over a list of spectra,
// with all bodies of a given n sharing sphere samples (common random
// numbers) so the normalized columns are comparable.
//
// The bounded-mean phenomenon holds for any 2-concave lattice norm; L_p is
// 2-concave exactly for p <= 2, and for p > 2 the mean grows like sqrt(p)
// (sqrt(log n) at p = inf), which is what the normalized columns track.
// Only the L_p family is implemented here.
std::vector<Theorem2Row> theorem2_sweep(const std::vector<SpectrumSelection>& spectra,
                                        const std::vector<double>& p_list, long samples,
                                        std::uint64_t seed);

}  // namespace flatpoly
