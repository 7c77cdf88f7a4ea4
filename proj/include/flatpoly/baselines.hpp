#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace flatpoly {

struct SignSequence {
  std::vector<int> signs;  // entries in {+1, -1}

  int length() const { return static_cast<int>(signs.size()); }
};

// i.i.d. uniform signs.
SignSequence random_sign_poly(int length, std::uint64_t seed);

// P-coefficients of the Rudin-Shapiro P/Q recursion; length 2^k, k <= 20.
// The polynomial sum eps_m e^{im theta} has sup norm at most sqrt(2N).
// (Ultraflat unimodular families with sup norm (1 + o(1)) sqrt(N) exist but
// need non-real coefficients and are out of scope; sqrt(2N) is the
// deterministic witness this module provides.)
SignSequence rudin_shapiro(int k);

// max_j |sum_k coeffs[k] e^{ik theta_j}| over a uniform grid of grid_points
// angles (an FFT when the grid size is a power of two).
double exp_poly_grid_sup(const std::vector<std::complex<double>>& coeffs, int grid_points);

// Grid sup norm of the sign polynomial on 64N points.
double sign_poly_sup(const SignSequence& seq);

struct RudinCheck {
  double best_sup = 0.0;  // smallest grid sup norm over the attempts
  bool passed = false;    // best_sup < 5 sqrt(N)
};

// Random search for flat sign polynomials against the classical 5 sqrt(N)
// existence bound.
RudinCheck rudin_check(int length, int attempts, std::uint64_t seed);

struct MomentCheck {
  double ratio = 0.0;   // E ||q_N||_p^p / N^{p/2} estimate
  double target = 0.0;  // Gamma(1 + p/2)
  bool passed = false;
};

// Monte Carlo moments of random exponential polynomials with i.i.d.
// mean-0 variance-1 coefficients (Gaussian by default, signs on request);
// the grid power mean is exact for even p. p = 2 is closed form: the ratio
// is (N+1)/N with no sampling.
MomentCheck moment_check(int degree, int p, int trials, std::uint64_t seed,
                         bool rademacher = false, double tolerance = 0.10);

}  // namespace flatpoly
