#include "flatpoly/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace flatpoly {

namespace {

double legendre_value(int n, double x, double* deriv) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    if (deriv) *deriv = 0.0;
    return 1.0;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  if (deriv) *deriv = n * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 1; k <= n; ++k) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(M_PI * (4.0 * k - 1.0) / (4.0 * n + 2.0)) *
               (1.0 - 1.0 / (8.0 * n * n) + 1.0 / (8.0 * n * n * n));
    double d = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double f = legendre_value(n, x, &d);
      const double dx = f / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_value(n, x, &d);
    nodes[static_cast<std::size_t>(k - 1)] = x;
    weights[static_cast<std::size_t>(k - 1)] = 2.0 / ((1.0 - x * x) * d * d);
  }
}

QuadratureRule torus_rule(int d, int points_per_dim) {
  if (d < 1 || d > 3) throw std::invalid_argument("torus dimension must be 1..3");
  if (points_per_dim < 1) throw std::invalid_argument("need at least one node per axis");
  QuadratureRule rule;
  rule.manifold = (d == 1) ? Manifold::Torus1 : (d == 2) ? Manifold::Torus2 : Manifold::Torus3;
  const int n = points_per_dim;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= n;
  rule.nodes.reserve(static_cast<std::size_t>(total));
  const double h = 2.0 * M_PI / n;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    Coord x{0.0, 0.0, 0.0};
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] = h * static_cast<double>(rest % n);
      rest /= n;
    }
    rule.nodes.push_back(x);
  }
  rule.weights = Eigen::VectorXd::Constant(total, 1.0 / static_cast<double>(total));
  rule.exactness = n - 1;
  return rule;
}

QuadratureRule sphere_rule(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("empty sphere rule");
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(n_theta, gl_nodes, gl_weights);
  QuadratureRule rule;
  rule.manifold = Manifold::Sphere2;
  rule.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  Eigen::VectorXd w(static_cast<long>(n_theta) * n_phi);
  long pos = 0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(gl_nodes[static_cast<std::size_t>(i)]);
    const double wt = gl_weights[static_cast<std::size_t>(i)] / 2.0;  // normalize [-1,1]
    for (int j = 0; j < n_phi; ++j) {
      rule.nodes.push_back({theta, 2.0 * M_PI * j / n_phi, 0.0});
      w[pos++] = wt / n_phi;
    }
  }
  rule.weights = std::move(w);
  rule.exactness = std::min(2 * n_theta - 1, n_phi - 1);
  return rule;
}

QuadratureRule exact_product_rule(const SpectrumSelection& spectrum, int power) {
  if (power < 1) throw std::invalid_argument("power must be >= 1");
  const int deg = spectrum.max_degree();
  const int target = power * deg;
  if (spectrum.system->manifold() == Manifold::Sphere2)
    return sphere_rule((target + 2) / 2, target + 1);
  return torus_rule(coord_dim(spectrum.system->manifold()), target + 1);
}

QuadraturePtr shared_exact_rule(const SpectrumSelection& spectrum, int power) {
  return std::make_shared<QuadratureRule>(exact_product_rule(spectrum, power));
}

QuadratureRule oversampled_rule(const SpectrumSelection& spectrum, int factor) {
  if (factor < 1) throw std::invalid_argument("factor must be >= 1");
  const int deg = std::max(1, spectrum.max_degree());
  QuadratureRule rule;
  if (spectrum.system->manifold() == Manifold::Sphere2)
    rule = sphere_rule(factor * deg, 2 * factor * deg);
  else
    rule = torus_rule(coord_dim(spectrum.system->manifold()), factor * deg);
  rule.approximate = true;
  return rule;
}

QuadraturePtr shared_oversampled_rule(const SpectrumSelection& spectrum, int factor) {
  return std::make_shared<QuadratureRule>(oversampled_rule(spectrum, factor));
}

QuadratureRule sup_grid_rule(const SpectrumSelection& spectrum, int density) {
  if (density < 4)
    throw std::invalid_argument("sup grid density must be at least 4x the resolution");
  const int deg = std::max(1, spectrum.max_degree());
  if (spectrum.system->manifold() != Manifold::Sphere2) {
    QuadratureRule rule = torus_rule(coord_dim(spectrum.system->manifold()), density * deg);
    rule.approximate = true;
    return rule;
  }
  QuadratureRule rule;
  rule.manifold = Manifold::Sphere2;
  const int nt = density * deg + 1, np = density * deg;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j)
      rule.nodes.push_back({M_PI * i / (nt - 1), 2.0 * M_PI * j / np, 0.0});
  rule.weights = Eigen::VectorXd::Constant(static_cast<long>(nt) * np,
                                           1.0 / (static_cast<double>(nt) * np));
  rule.approximate = true;
  return rule;
}

QuadraturePtr shared_sup_grid_rule(const SpectrumSelection& spectrum, int density) {
  return std::make_shared<QuadratureRule>(sup_grid_rule(spectrum, density));
}

double kernel_reproducing_check(const SpectrumSelection& spectrum,
                                const QuadratureRule& rule,
                                const std::vector<std::pair<Coord, Coord>>& pairs) {
  if (rule.approximate || rule.exactness < 2 * spectrum.max_degree())
    throw std::invalid_argument("reproducing check needs a rule exact for basis products");
  const NodeBasis table = NodeBasis::build(spectrum, rule);
  double max_dev = 0.0;
  for (const auto& [x, y] : pairs) {
    const Eigen::VectorXd ex = spectrum.evaluate(x);
    const Eigen::VectorXd ey = spectrum.evaluate(y);
    const Eigen::VectorXd kx = table.values() * ex;  // K(x, z_i)
    const Eigen::VectorXd ky = table.values() * ey;  // K(z_i, y)
    const double integral = (table.weights().array() * kx.array() * ky.array()).sum();
    max_dev = std::max(max_dev, std::abs(integral - ex.dot(ey)));
  }
  return max_dev;
}

NodeBasis NodeBasis::build(const SpectrumSelection& spectrum, const QuadratureRule& rule) {
  if (rule.manifold != spectrum.system->manifold())
    throw std::invalid_argument("rule and spectrum live on different manifolds");
  NodeBasis nb;
  const long rows = static_cast<long>(rule.nodes.size());
  nb.values_.resize(rows, spectrum.n);
  Eigen::VectorXd row(spectrum.n);
  for (long i = 0; i < rows; ++i) {
    spectrum.evaluate(rule.nodes[static_cast<std::size_t>(i)], row.data());
    nb.values_.row(i) = row.transpose();
  }
  nb.weights_ = rule.weights;
  nb.exactness_ = rule.exactness;
  nb.approximate_ = rule.approximate;
  return nb;
}

double NodeBasis::lp(const Eigen::VectorXd& alpha, double p) const {
  const Eigen::VectorXd t = values_ * alpha;
  if (p == 2.0) return std::sqrt(weights_.dot(t.cwiseAbs2()));
  double acc = 0.0;
  for (long i = 0; i < t.size(); ++i)
    acc += weights_[i] * std::pow(std::abs(t[i]), p);
  return std::pow(acc, 1.0 / p);
}

Eigen::VectorXd NodeBasis::lp_gradient(const Eigen::VectorXd& alpha, double p) const {
  const Eigen::VectorXd t = values_ * alpha;
  double acc = 0.0;
  Eigen::VectorXd contrib(t.size());
  for (long i = 0; i < t.size(); ++i) {
    const double a = std::abs(t[i]);
    acc += weights_[i] * std::pow(a, p);
    contrib[i] = weights_[i] * ((a == 0.0) ? 0.0 : std::pow(a, p - 1.0)) *
                 ((t[i] >= 0.0) ? 1.0 : -1.0);
  }
  const double norm = std::pow(acc, 1.0 / p);
  if (norm == 0.0) return Eigen::VectorXd::Zero(alpha.size());
  return values_.transpose() * contrib * std::pow(norm, 1.0 - p);
}

double NodeBasis::max_abs(const Eigen::VectorXd& alpha, int* argmax_node) const {
  const Eigen::VectorXd t = values_ * alpha;
  long idx = 0;
  const double m = t.cwiseAbs().maxCoeff(&idx);
  if (argmax_node) *argmax_node = static_cast<int>(idx);
  return m;
}

Eigen::VectorXd NodeBasis::max_abs_subgradient(const Eigen::VectorXd& alpha) const {
  const Eigen::VectorXd t = values_ * alpha;
  long idx = 0;
  t.cwiseAbs().maxCoeff(&idx);
  const double sign = (t[idx] >= 0.0) ? 1.0 : -1.0;
  return sign * values_.row(idx).transpose();
}

}  // namespace flatpoly
