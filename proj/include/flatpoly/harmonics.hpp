#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "flatpoly/rng.hpp"

namespace flatpoly {

enum class Manifold { Torus1, Torus2, Torus3, Sphere2 };

// Number of chart coordinates: d angles on T^d, (theta, phi) on S^2.
int coord_dim(Manifold m);
std::string manifold_name(Manifold m);
Manifold manifold_from_name(const std::string& name);

// A point in chart coordinates; unused trailing entries are zero.
// Tori: angles in [0, 2pi)^d. Sphere2: (colatitude theta in [0, pi],
// longitude phi in [0, 2pi)).
using Coord = std::array<double, 3>;

// One Laplace-Beltrami eigenspace: eigenvalue, dimension, and the data the
// evaluator needs (lattice frequencies for tori, the degree for S^2).
struct EigenBlock {
  double eigenvalue = 0.0;
  int dim = 0;
  int offset = 0;                             // first slot in the full system
  std::vector<std::array<int, 3>> freqs;      // canonical lattice reps (tori)
  int sphere_l = -1;                          // degree l (Sphere2)
};

// An eigenspace-block-structured orthonormal family, real-valued and
// normalized in L2 of the normalized invariant measure. All implemented
// systems satisfy the block bound sum_k |xi_k(x)|^2 = C * d_j with C = 1;
// the constant is kept as a field so callers can work with the inequality
// form as well.
class OrthonormalSystem {
 public:
  OrthonormalSystem(Manifold m, std::vector<EigenBlock> blocks,
                    double class_k_constant = 1.0);

  Manifold manifold() const { return manifold_; }
  int coord_dim() const { return flatpoly::coord_dim(manifold_); }
  double class_k_constant() const { return class_k_constant_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const EigenBlock& block(int j) const;
  int total_dim() const { return total_dim_; }

  // Values of the block's orthonormal basis at x, in fixed slot order.
  Eigen::VectorXd evaluate_block(int j, const Coord& x) const;
  void evaluate_block(int j, const Coord& x, double* out) const;

 private:
  Manifold manifold_;
  std::vector<EigenBlock> blocks_;
  double class_k_constant_;
  int total_dim_;
};

using SystemPtr = std::shared_ptr<const OrthonormalSystem>;

// T^d system (d <= 3) with all eigenvalue blocks |k|^2 <= max_freq^2.
// Basis: 1 for k = 0 and {sqrt(2) cos<k,x>, sqrt(2) sin<k,x>} for each
// canonical lattice representative (first nonzero component positive),
// grouped by eigenvalue so blocks carry the true multiplicity.
SystemPtr torus_system(int d, int max_freq);

// S^2 system with degrees l = 0..lmax (lmax <= 64), eigenvalue l(l+1),
// block dimension 2l+1. Real spherical harmonics via stable normalized
// associated Legendre recurrences.
SystemPtr sphere_system(int lmax);

// A chosen set of blocks with total dimension n and the slot layout of the
// coordinate isomorphism between R^n and the spanned polynomial space.
struct SpectrumSelection {
  SystemPtr system;
  std::vector<int> blocks;  // strictly increasing block indices
  int n = 0;                // sum of selected block dims

  // Values of all selected basis functions at x (slot order).
  Eigen::VectorXd evaluate(const Coord& x) const;
  void evaluate(const Coord& x, double* out) const;

  // Spectral resolution: max per-axis |k_i| on tori, max degree l on S^2.
  int max_degree() const;

  // Slot index of (selected block s, within-block index t).
  int slot(int s, int t) const;
};

SpectrumSelection select_blocks(SystemPtr system, std::vector<int> blocks);
SpectrumSelection select_first_blocks(SystemPtr system, int m);
// Greedy prefix of blocks whose total dimension stays <= max_dim.
SpectrumSelection select_prefix_dim(SystemPtr system, int max_dim);

// Reproducing kernel of the selected blocks,
// K_n(x, y) = sum_k xi_k(x) xi_k(y); K_n(x, x) = n.
double kernel(const SpectrumSelection& spectrum, const Coord& x, const Coord& y);

// Coefficient vector of the kernel column K_n(., y), i.e. alpha_k = xi_k(y).
Eigen::VectorXd kernel_column(const SpectrumSelection& spectrum, const Coord& y);

// Center of the chart: the zero angle on tori, the north pole on S^2.
Coord origin_point(Manifold m);
Coord random_point(Manifold m, Rng& rng);

struct ClassKReport {
  bool ok = false;
  double max_deviation = 0.0;
};

// Checks the block bound |sum_s |f_s(x)|^2 - d_j| <= tol at every sample
// point, for every selected block (equality form; these systems are
// homogeneous).
ClassKReport class_k_verify(const SpectrumSelection& spectrum,
                            const std::vector<Coord>& points, double tol);

}  // namespace flatpoly
