#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "flatpoly/rng.hpp"

namespace flatpoly {

struct SphereOptOptions {
  int restarts = 16;
  int iterations = 300;
  std::uint64_t seed = 1;
  std::vector<Eigen::VectorXd> warm_starts;  // tried in addition to random starts
  bool polish = true;                        // rotation line search after descent
};

struct SphereOptResult {
  Eigen::VectorXd x;       // unit vector
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> restart_values;
};

// Minimizes a positively homogeneous objective over the unit sphere by
// projected subgradient descent with backtracking, multi-start, and an
// optional plane-rotation polish that copes with polyhedral kinks.
SphereOptResult minimize_on_sphere(
    int dim, const std::function<double(const Eigen::VectorXd&)>& value,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& subgrad,
    const SphereOptOptions& opts);

}  // namespace flatpoly
