#include "flatpoly/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace flatpoly {

namespace {

void check_lp_preconditions(const SpectrumSelection& spectrum, double p,
                            const QuadratureRule& rule) {
  if (p < 1.0 || p == kInf)
    throw std::invalid_argument("lp_norm handles 1 <= p < infinity");
  if (is_even_integer(p)) {
    const int needed = static_cast<int>(p) * spectrum.max_degree();
    if (!rule.approximate && rule.exactness < needed)
      throw std::invalid_argument("quadrature exactness insufficient for |t|^p; "
                                  "use a finer rule");
    if (rule.approximate && rule.exactness < needed)
      throw std::invalid_argument("approximate rule too coarse for even-integer p");
  } else if (!rule.approximate) {
    throw std::invalid_argument("|t|^p is not a polynomial for non-even p; "
                                "an oversampled rule flagged approximate is required");
  }
}

struct GridSpec {
  int per_dim[3] = {1, 1, 1};
  int dims = 1;
};

GridSpec linf_grid_spec(const SpectrumSelection& spectrum, int grid_density) {
  if (grid_density < 4)
    throw std::invalid_argument("grid_density must be at least 4x the spectral resolution");
  const int deg = std::max(1, spectrum.max_degree());
  GridSpec g;
  if (spectrum.system->manifold() == Manifold::Sphere2) {
    g.dims = 2;
    g.per_dim[0] = grid_density * deg + 1;  // colatitude, poles included
    g.per_dim[1] = grid_density * deg;
  } else {
    g.dims = coord_dim(spectrum.system->manifold());
    for (int i = 0; i < g.dims; ++i) g.per_dim[i] = grid_density * deg;
  }
  return g;
}

double eval_abs(const Polynomial& poly, const Coord& x) {
  return std::abs(poly.spectrum.evaluate(x).dot(poly.alpha));
}

// Golden-section maximization of |t| along coordinate `axis` in
// [center - span, center + span].
void refine_axis(const Polynomial& poly, Coord& best, double& best_val, int axis,
                 double span, int iters) {
  const double gr = 0.6180339887498949;
  Coord x = best;
  double lo = best[static_cast<std::size_t>(axis)] - span;
  double hi = best[static_cast<std::size_t>(axis)] + span;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  x[static_cast<std::size_t>(axis)] = c;
  double fc = eval_abs(poly, x);
  x[static_cast<std::size_t>(axis)] = d;
  double fd = eval_abs(poly, x);
  for (int it = 0; it < iters; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      x[static_cast<std::size_t>(axis)] = c;
      fc = eval_abs(poly, x);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      x[static_cast<std::size_t>(axis)] = d;
      fd = eval_abs(poly, x);
    }
  }
  const double mid = 0.5 * (lo + hi);
  x[static_cast<std::size_t>(axis)] = mid;
  const double fm = eval_abs(poly, x);
  if (fm > best_val) {
    best_val = fm;
    best = x;
  }
}

}  // namespace

double lp_norm(const Polynomial& poly, double p, const QuadratureRule& rule) {
  if (poly.alpha.size() != poly.spectrum.n)
    throw std::invalid_argument("coefficient length does not match spectrum dimension");
  check_lp_preconditions(poly.spectrum, p, rule);
  return NodeBasis::build(poly.spectrum, rule).lp(poly.alpha, p);
}

double lp_norm(const NodeBasis& basis, const Eigen::VectorXd& alpha, double p) {
  return basis.lp(alpha, p);
}

LinfResult linf_norm(const Polynomial& poly, int grid_density, int refine_steps) {
  const GridSpec g = linf_grid_spec(poly.spectrum, grid_density);
  const Manifold m = poly.spectrum.system->manifold();
  const bool sphere = (m == Manifold::Sphere2);

  LinfResult res;
  Coord x{0.0, 0.0, 0.0};
  long total = 1;
  for (int i = 0; i < g.dims; ++i) total *= g.per_dim[i];
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int i = 0; i < g.dims; ++i) {
      const int ni = g.per_dim[i];
      const int pos = static_cast<int>(rest % ni);
      rest /= ni;
      if (sphere && i == 0)
        x[0] = M_PI * pos / (ni - 1);
      else
        x[static_cast<std::size_t>(i)] = 2.0 * M_PI * pos / ni;
    }
    const double v = eval_abs(poly, x);
    if (v > res.value) {
      res.value = v;
      res.argmax = x;
    }
  }

  // Local polish around the best grid cell.
  for (int cycle = 0; cycle < 2; ++cycle) {
    for (int i = 0; i < g.dims; ++i) {
      const double span = (sphere && i == 0) ? M_PI / (g.per_dim[0] - 1)
                                             : 2.0 * M_PI / g.per_dim[i];
      refine_axis(poly, res.argmax, res.value, i, span, refine_steps);
    }
  }

  // Bernstein-type slack: the true maximum can exceed the grid maximum by at
  // most ~ value * d * (deg * h)^2 / 8 for grid spacing h.
  const int deg = std::max(1, poly.spectrum.max_degree());
  double slack = 0.0;
  for (int i = 0; i < g.dims; ++i) {
    const double h = (sphere && i == 0) ? M_PI / (g.per_dim[0] - 1)
                                        : 2.0 * M_PI / g.per_dim[i];
    slack += (deg * h) * (deg * h) / 8.0;
  }
  res.uncertainty = res.value * slack;
  return res;
}

QuadraturePtr default_rule(const SpectrumSelection& spectrum, double p) {
  if (p == kInf)
    throw std::invalid_argument("p = infinity has no quadrature rule; use linf_norm");
  if (is_even_integer(p)) return shared_exact_rule(spectrum, static_cast<int>(p));
  return shared_oversampled_rule(spectrum);
}

double induced_norm(const SpectrumSelection& spectrum, const Eigen::VectorXd& alpha,
                    double p, const QuadratureRule& rule) {
  return lp_norm(Polynomial{spectrum, alpha}, p, rule);
}

double induced_norm(const SpectrumSelection& spectrum, const Eigen::VectorXd& alpha,
                    double p) {
  if (alpha.size() != spectrum.n)
    throw std::invalid_argument("coefficient length does not match spectrum dimension");
  if (p == kInf) return linf_norm(Polynomial{spectrum, alpha}).value;
  return induced_norm(spectrum, alpha, p, *default_rule(spectrum, p));
}

NikolskiiReport nikolskii_check(const SpectrumSelection& spectrum, double p, double q,
                                int trials, std::uint64_t seed) {
  if (p < 1.0 || q < 1.0) throw std::invalid_argument("need 1 <= p, q <= infinity");

  // One tabulation per side; the grid table doubles as the sup-norm oracle.
  auto side_basis = [&](double e) {
    if (e == kInf) return NodeBasis::build(spectrum, sup_grid_rule(spectrum));
    return NodeBasis::build(spectrum, *default_rule(spectrum, e));
  };
  const NodeBasis bp = side_basis(p);
  const NodeBasis bq = side_basis(q);
  auto ratio_of = [&](const Eigen::VectorXd& alpha) {
    const double np_ = (p == kInf) ? bp.max_abs(alpha) : bp.lp(alpha, p);
    const double nq_ = (q == kInf) ? bq.max_abs(alpha) : bq.lp(alpha, q);
    return np_ / nq_;
  };

  NikolskiiReport rep;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t)
    rep.max_ratio = std::max(rep.max_ratio, ratio_of(rng.gaussian_vector(spectrum.n)));
  rep.kernel_ratio = ratio_of(kernel_column(spectrum, origin_point(spectrum.system->manifold())));
  const double expo = std::max(0.0, (q == kInf ? 0.0 : 1.0 / q) - (p == kInf ? 0.0 : 1.0 / p));
  rep.bound = std::pow(static_cast<double>(spectrum.n), expo);
  rep.passed = std::max(rep.max_ratio, rep.kernel_ratio) <= rep.bound * (1.0 + 1e-9) + 1e-12;
  return rep;
}

}  // namespace flatpoly
