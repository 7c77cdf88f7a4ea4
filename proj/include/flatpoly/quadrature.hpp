#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "flatpoly/harmonics.hpp"

namespace flatpoly {

// Nodes and weights realizing the normalized invariant measure. `exactness`
// is the largest total spectral degree (max per-axis frequency on tori,
// degree l on S^2) of an integrand the rule handles exactly; rules built by
// oversampling for non-polynomial integrands carry `approximate = true`.
struct QuadratureRule {
  Manifold manifold = Manifold::Torus1;
  std::vector<Coord> nodes;
  Eigen::VectorXd weights;  // positive, sum to 1
  int exactness = 0;
  bool approximate = false;
};

using QuadraturePtr = std::shared_ptr<const QuadratureRule>;

// Uniform product grid on T^d; exact for trigonometric polynomials with
// per-axis degree <= points_per_dim - 1.
QuadratureRule torus_rule(int d, int points_per_dim);

// Gauss-Legendre in cos(theta) x uniform in phi; exact for spherical
// polynomials of degree <= min(2 * n_theta - 1, n_phi - 1).
QuadratureRule sphere_rule(int n_theta, int n_phi);

// Gauss-Legendre nodes/weights on [-1, 1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Smallest rule of the spectrum's manifold that integrates t^power exactly
// for every polynomial t in the spectrum.
QuadratureRule exact_product_rule(const SpectrumSelection& spectrum, int power);
QuadraturePtr shared_exact_rule(const SpectrumSelection& spectrum, int power);

// Oversampled rule for non-polynomial integrands |t|^p, p not an even
// integer: `factor` nodes per unit of spectral resolution (default 8x).
QuadratureRule oversampled_rule(const SpectrumSelection& spectrum, int factor = 8);
QuadraturePtr shared_oversampled_rule(const SpectrumSelection& spectrum, int factor = 8);

// Dense uniform grid whose max realizes the grid sup norm (`density` nodes
// per unit of spectral resolution and per axis; poles included on S^2).
QuadratureRule sup_grid_rule(const SpectrumSelection& spectrum, int density = 8);
QuadraturePtr shared_sup_grid_rule(const SpectrumSelection& spectrum, int density = 8);

// Max deviation of the reproducing identity
// K(x, y) = integral K(x, z) K(z, y) dnu(z) over the sampled pairs. The rule
// must be exact for products of selected basis functions (power 2); inexact
// rules are rejected.
double kernel_reproducing_check(const SpectrumSelection& spectrum,
                                const QuadratureRule& rule,
                                const std::vector<std::pair<Coord, Coord>>& pairs);

// Basis values of a spectrum tabulated at the nodes of a rule. This is the
// workhorse behind every norm evaluation: t(x_i) = (values * alpha)_i.
class NodeBasis {
 public:
  static NodeBasis build(const SpectrumSelection& spectrum, const QuadratureRule& rule);

  const Eigen::MatrixXd& values() const { return values_; }   // nodes x n
  const Eigen::VectorXd& weights() const { return weights_; }
  int nodes() const { return static_cast<int>(values_.rows()); }
  int dim() const { return static_cast<int>(values_.cols()); }
  int exactness() const { return exactness_; }
  bool approximate() const { return approximate_; }

  // (sum_i w_i |t(x_i)|^p)^(1/p); the caller is responsible for exactness.
  double lp(const Eigen::VectorXd& alpha, double p) const;
  // Gradient of alpha -> lp(alpha, p) for finite p > 1.
  Eigen::VectorXd lp_gradient(const Eigen::VectorXd& alpha, double p) const;
  // max_i |t(x_i)| and the attaining node.
  double max_abs(const Eigen::VectorXd& alpha, int* argmax_node = nullptr) const;
  // Subgradient of the grid sup-norm at alpha (row of the max-attaining node).
  Eigen::VectorXd max_abs_subgradient(const Eigen::VectorXd& alpha) const;

 private:
  Eigen::MatrixXd values_;
  Eigen::VectorXd weights_;
  int exactness_ = 0;
  bool approximate_ = false;
};

}  // namespace flatpoly
