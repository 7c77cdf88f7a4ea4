#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "flatpoly/norms.hpp"
#include "flatpoly/subspace.hpp"

namespace flatpoly {

class NormBody;

struct LpBall {
  double p = 2.0;
};

struct EllipsoidBody {
  Eigen::MatrixXd shape;      // SPD matrix A; norm = sqrt(x^T A x)
  Eigen::MatrixXd shape_inv;
  double eig_min = 1.0;
  double eig_max = 1.0;
};

struct InducedBody {
  SpectrumSelection spectrum;
  double p = 2.0;
  QuadraturePtr rule;                       // finite p: quadrature; p = inf: sup grid
  std::shared_ptr<const NodeBasis> table;
};

// Restriction of a parent body to a subspace, expressed in subspace
// coordinates: norm(u) = parent_norm(basis * u).
struct SectionBody {
  std::shared_ptr<const NormBody> parent;
  Subspace section;
};

struct DualNormValue {
  double value = 0.0;
  bool exact = false;      // closed form vs projected-ascent lower bound
  bool converged = false;
};

// A symmetric convex body in R^n presented through its norm oracle.
class NormBody {
 public:
  using Kind = std::variant<LpBall, EllipsoidBody, InducedBody, SectionBody>;

  static NormBody lp(int n, double p);
  static NormBody ellipsoid(const Eigen::MatrixXd& shape);
  static NormBody induced(SpectrumSelection spectrum, double p, QuadraturePtr rule = nullptr);
  static NormBody section_of(const NormBody& parent, const Subspace& L);

  // The dilate c * V; its norm is norm_V / c.
  NormBody scaled(double c) const;

  int dim() const { return dim_; }
  const Kind& kind() const { return kind_; }
  double scale() const { return scale_; }
  void set_circumradius_hint(double r);

  double norm(const Eigen::VectorXd& x) const;
  Eigen::VectorXd norm_subgradient(const Eigen::VectorXd& x) const;

  // sup{ |<x, beta>| : norm(beta) <= 1 }. Closed form for Lp and ellipsoids;
  // multi-start projected ascent (a lower-bound estimate, flagged) otherwise.
  DualNormValue dual_norm(const Eigen::VectorXd& x, int restarts = 8, int iterations = 200,
                          std::uint64_t seed = 1) const;
  bool has_exact_dual() const;

  // The polar body for kinds with a closed-form dual; throws otherwise.
  NormBody polar() const;

  // Some R with body inside R * B_2^n (closed form or Nikolskii-derived).
  double circumradius() const;

  // Upper bound on sup{ norm(v) : ||v||_2 = 1 }; the polar body lies inside
  // a Euclidean ball of this radius.
  double norm_upper_bound() const;

  std::string digest() const;

 private:
  NormBody(int dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}

  int dim_;
  Kind kind_;
  double scale_ = 1.0;
  std::optional<double> circumradius_hint_;
};

double ball_volume(int n);

struct VolumeEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

// Hit-or-miss volume inside the circumscribed Euclidean ball; measured in
// the subspace's intrinsic dimension when L is given. Deterministic given
// the seed (fixed chunked accumulation).
VolumeEstimate mc_volume(const NormBody& body, const std::optional<Subspace>& L,
                         long samples, std::uint64_t seed);

// Volume of the affine section V cap (offset + L), measured in dim(L).
VolumeEstimate mc_section_volume(const NormBody& body, const Subspace& L,
                                 const Eigen::VectorXd& offset, long samples,
                                 std::uint64_t seed);

struct DiameterResult {
  double value = 0.0;
  Eigen::VectorXd witness;  // boundary point: norm(witness) = 1
  bool converged = false;
};

// 2 * max{ ||x||_2 : x in L, norm(x) <= 1 }, by exact eigen-decomposition
// for ellipsoids and multi-start sphere descent otherwise.
DiameterResult diameter_of_section(const NormBody& body, const Subspace& L,
                                   int restarts = 32, std::uint64_t seed = 1);

}  // namespace flatpoly
