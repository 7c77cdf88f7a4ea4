#pragma once

#include <optional>

#include <Eigen/Core>

#include "flatpoly/harmonics.hpp"
#include "flatpoly/quadrature.hpp"

namespace flatpoly {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_even_integer(double p) {
  return p > 0 && p < kInf && p == std::floor(p) && (static_cast<long>(p) % 2 == 0);
}

// A polynomial in the span of the selected blocks, stored through the
// coordinate isomorphism: the function is sum_l alpha_l * xi_l.
struct Polynomial {
  SpectrumSelection spectrum;
  Eigen::VectorXd alpha;
};

// Quadrature L_p norm, 1 <= p < infinity. Even integer p demands a rule
// exact for t^p (throws otherwise); any other p demands a rule flagged
// approximate, since |t|^p is not a polynomial.
double lp_norm(const Polynomial& poly, double p, const QuadratureRule& rule);
double lp_norm(const NodeBasis& basis, const Eigen::VectorXd& alpha, double p);

struct LinfResult {
  double value = 0.0;        // certified lower bound of the sup norm
  double uncertainty = 0.0;  // grid-spacing x Bernstein slack estimate
  Coord argmax{0.0, 0.0, 0.0};
};

// Grid maximum of |t| followed by per-coordinate golden-section refinement.
// grid_density is nodes per unit of spectral resolution and must be >= 4.
LinfResult linf_norm(const Polynomial& poly, int grid_density = 8, int refine_steps = 40);

// Norm of the function J(alpha) pulled back to coefficient space. p = kInf
// routes to linf_norm with the default densities.
double induced_norm(const SpectrumSelection& spectrum, const Eigen::VectorXd& alpha,
                    double p, const QuadratureRule& rule);
double induced_norm(const SpectrumSelection& spectrum, const Eigen::VectorXd& alpha, double p);

// Picks the right rule for an L_p evaluation on this spectrum: exact for
// even integers, 8x oversampled otherwise.
QuadraturePtr default_rule(const SpectrumSelection& spectrum, double p);

struct NikolskiiReport {
  double max_ratio = 0.0;     // worst ||t||_p / ||t||_q over the random trials
  double kernel_ratio = 0.0;  // ratio of the kernel-column candidate
  double bound = 0.0;         // n^{(1/p - 1/q)_+}
  bool passed = false;
};

// Samples random coefficient vectors and reports the worst ratio against the
// dimension bound with C = 1; the kernel column is evaluated as the extremal
// candidate.
NikolskiiReport nikolskii_check(const SpectrumSelection& spectrum, double p, double q,
                                int trials, std::uint64_t seed);

}  // namespace flatpoly
