#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace flatpoly {

// An s-dimensional subspace of R^n given by an orthonormal column basis.
struct Subspace {
  Eigen::MatrixXd basis;  // n x s, basis^T basis = I

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }

  Eigen::VectorXd lift(const Eigen::VectorXd& u) const { return basis * u; }
  Eigen::VectorXd project_coords(const Eigen::VectorXd& x) const {
    return basis.transpose() * x;
  }
  // Distance from x to the subspace.
  double residual(const Eigen::VectorXd& x) const {
    return (x - basis * (basis.transpose() * x)).norm();
  }
};

inline Subspace full_space(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return Subspace{Eigen::MatrixXd::Identity(n, n)};
}

inline Subspace span_of(const Eigen::MatrixXd& columns) {
  Subspace s{columns};
  const Eigen::MatrixXd gram =
      columns.transpose() * columns - Eigen::MatrixXd::Identity(columns.cols(), columns.cols());
  if (gram.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("columns are not orthonormal");
  return s;
}

}  // namespace flatpoly
