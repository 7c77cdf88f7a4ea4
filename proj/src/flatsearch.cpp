#include "flatpoly/flatsearch.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "flatpoly/levy.hpp"
#include "flatpoly/rng.hpp"
#include "flatpoly/sphere_opt.hpp"

namespace flatpoly {

Subspace random_subspace(int n, int s, std::uint64_t seed) {
  if (s < 1 || s > n) throw std::invalid_argument("need 1 <= s <= n");
  Rng rng(seed);
  Eigen::MatrixXd g(n, s);
  for (int j = 0; j < s; ++j) g.col(j) = rng.gaussian_vector(n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, s);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(s).triangularView<Eigen::Upper>();
  // Positive-diagonal convention makes the factorization unique, hence Haar.
  for (int j = 0; j < s; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return Subspace{std::move(q)};
}

Subspace intersect_subspaces(const Subspace& A, const Subspace& B, double rel_threshold,
                             bool* degenerate) {
  if (A.ambient_dim() != B.ambient_dim())
    throw std::invalid_argument("ambient dimensions differ");
  const int n = A.ambient_dim();
  Eigen::MatrixXd stacked(2 * n, n);
  stacked.topRows(n) = Eigen::MatrixXd::Identity(n, n) - A.basis * A.basis.transpose();
  stacked.bottomRows(n) = Eigen::MatrixXd::Identity(n, n) - B.basis * B.basis.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending
  const double cutoff = rel_threshold * sv[0];
  int m3 = 0;
  while (m3 < n && sv[n - 1 - m3] <= cutoff) ++m3;
  if (m3 == 0) throw std::invalid_argument("empty intersection");
  if (degenerate) {
    const double smallest_retained = sv[n - 1 - m3];
    *degenerate = smallest_retained < 1e-8;
  }
  return Subspace{svd.matrixV().rightCols(m3)};
}

namespace {

struct SideTable {
  Eigen::MatrixXd values;   // nodes x s (subspace coordinates)
  Eigen::VectorXd weights;
  double p = 2.0;
  bool parseval = false;    // q = 2 shortcut: the norm is ||u||_2

  double norm(const Eigen::VectorXd& u) const {
    if (parseval) return u.norm();
    const Eigen::VectorXd t = values * u;
    if (p == kInf) return t.cwiseAbs().maxCoeff();
    if (p == 2.0) return std::sqrt(weights.dot(t.cwiseAbs2()));
    double acc = 0.0;
    for (long i = 0; i < t.size(); ++i)
      acc += weights[i] * std::pow(std::abs(t[i]), p);
    return std::pow(acc, 1.0 / p);
  }

  Eigen::VectorXd subgradient(const Eigen::VectorXd& u) const {
    if (parseval) {
      const double nu = u.norm();
      return (nu == 0.0) ? Eigen::VectorXd::Zero(u.size()) : Eigen::VectorXd(u / nu);
    }
    const Eigen::VectorXd t = values * u;
    if (p == kInf) {
      long idx = 0;
      t.cwiseAbs().maxCoeff(&idx);
      const double sgn = (t[idx] >= 0.0) ? 1.0 : -1.0;
      return sgn * values.row(idx).transpose();
    }
    double acc = 0.0;
    Eigen::VectorXd contrib(t.size());
    for (long i = 0; i < t.size(); ++i) {
      const double a = std::abs(t[i]);
      acc += weights[i] * std::pow(a, p);
      contrib[i] =
          weights[i] * ((a == 0.0) ? 0.0 : std::pow(a, p - 1.0)) * ((t[i] >= 0.0) ? 1.0 : -1.0);
    }
    const double norm = std::pow(acc, 1.0 / p);
    if (norm == 0.0) return Eigen::VectorXd::Zero(u.size());
    return values.transpose() * contrib * std::pow(norm, 1.0 - p);
  }
};

SideTable make_side(const SpectrumSelection& spectrum, const Subspace& L, double p) {
  SideTable side;
  side.p = p;
  if (p == 2.0) {
    side.parseval = true;
    return side;
  }
  const QuadratureRule rule =
      (p == kInf) ? sup_grid_rule(spectrum) : *default_rule(spectrum, p);
  const NodeBasis table = NodeBasis::build(spectrum, rule);
  side.values = table.values() * L.basis;
  side.weights = table.weights();
  return side;
}

FlatSearchResult run_descent(const SpectrumSelection& spectrum, const Subspace& L, double p,
                             double q, int restarts, int iterations, std::uint64_t seed,
                             const std::vector<Eigen::VectorXd>& warm_coords) {
  const SideTable top = make_side(spectrum, L, p);
  const SideTable bot = make_side(spectrum, L, q);

  auto ratio = [&](const Eigen::VectorXd& u) {
    const double d = bot.norm(u);
    if (d == 0.0) return 1e300;
    return top.norm(u) / d;
  };
  auto ratio_subgrad = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    const double fq = bot.norm(u);
    if (fq == 0.0) return Eigen::VectorXd::Zero(u.size());
    const double fp = top.norm(u);
    return (top.subgradient(u) * fq - fp * bot.subgradient(u)) / (fq * fq);
  };

  SphereOptOptions opts;
  opts.restarts = restarts;
  opts.iterations = iterations;
  opts.seed = seed;
  opts.warm_starts = warm_coords;
  // The constant function is the flattest polynomial of all; its projection
  // into L is a start the random multistart would rarely find (the ratio
  // rises before it falls when mixing a constant into a spread polynomial).
  Eigen::VectorXd const_coords = L.basis.row(0).transpose();
  if (const_coords.norm() > 1e-12) opts.warm_starts.push_back(const_coords.normalized());
  const SphereOptResult res = minimize_on_sphere(L.dim(), ratio, ratio_subgrad, opts);

  FlatSearchResult out;
  out.method = "ratio-descent";
  out.iterations = res.iterations;
  out.restarts = restarts;
  out.seed = seed;
  out.converged = res.converged;
  out.restart_ratios = res.restart_values;
  Eigen::VectorXd u = res.x / bot.norm(res.x);  // q-norm 1
  out.witness = L.basis * u;
  out.ratio = top.norm(u);
  return out;
}

std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xd1342543de82ef95ULL);
  return splitmix64(state);
}

}  // namespace

FlatSearchResult ratio_minimize(const SpectrumSelection& spectrum, const Subspace& L,
                                double p, double q, int restarts, int iterations,
                                std::uint64_t seed,
                                const std::optional<Eigen::VectorXd>& warm_start) {
  if (!(q >= 1.0) || !(p > q)) throw std::invalid_argument("need 1 <= q < p <= infinity");
  if (L.ambient_dim() != spectrum.n)
    throw std::invalid_argument("subspace ambient dimension must equal the spectrum dimension");

  std::vector<Eigen::VectorXd> warm;
  if (warm_start) {
    if (warm_start->size() != spectrum.n)
      throw std::invalid_argument("warm start dimension mismatch");
    Eigen::VectorXd w = L.project_coords(*warm_start);
    if (w.norm() > 0.0) warm.push_back(w.normalized());
  }

  if (p == kInf) {
    // Smooth surrogate first; its minimizer seeds the nonsmooth phase.
    FlatSearchResult smooth = run_descent(spectrum, L, 16.0, q, restarts,
                                          std::max(iterations / 2, 50), seed, warm);
    std::vector<Eigen::VectorXd> warm2 = warm;
    warm2.push_back(L.project_coords(smooth.witness).normalized());
    FlatSearchResult out = run_descent(spectrum, L, kInf, q, restarts,
                                       std::max(iterations / 2, 50), seed + 1, warm2);
    out.iterations += smooth.iterations;
    return out;
  }
  return run_descent(spectrum, L, p, q, restarts, iterations, seed, warm);
}

FlatSearchResult proof_pipeline(const SpectrumSelection& spectrum, const Subspace& L_m2,
                                double p, double q, double lambda, long samples,
                                std::uint64_t seed) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must be in (0,1)");
  const int n = spectrum.n;
  if (L_m2.ambient_dim() != n)
    throw std::invalid_argument("subspace ambient dimension must equal the spectrum dimension");
  const int m2 = L_m2.dim();
  if (static_cast<double>(m2) / n + lambda <= 1.0)
    throw std::invalid_argument("dim(L_m2)/n + lambda must exceed 1 for a nonempty intersection");

  const int m1 = static_cast<int>(std::ceil(lambda * n));
  const Subspace L_m1 = random_subspace(n, m1, seed);

  // Empirical constant of the random-subspace comparison: the smallest K
  // with ||alpha||_2 <= K ||alpha||_W on sampled directions of L_m1, with W
  // the induced L_q ball.
  const NormBody body_q = NormBody::induced(spectrum, q);
  double K_eq0 = 0.0;
  {
    Rng rng = Rng::derived(seed, 0xe0);
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd alpha = L_m1.basis * rng.sphere_vector(m1);
      K_eq0 = std::max(K_eq0, 1.0 / body_q.norm(alpha));
    }
  }

  bool degenerate = false;
  const Subspace L3 = intersect_subspaces(L_m1, L_m2, 1e-10, &degenerate);

  const NormBody body_p = NormBody::induced(spectrum, p);
  const DiameterResult diam = diameter_of_section(body_p, L3, 32, seed + 1);

  FlatSearchResult out;
  out.method = "proof-pipeline";
  out.seed = seed;
  out.converged = diam.converged;
  const double qn = body_q.norm(diam.witness);
  out.witness = diam.witness / qn;
  out.ratio = body_p.norm(out.witness);
  out.diagnostics["m1"] = m1;
  out.diagnostics["m2"] = m2;
  out.diagnostics["m3"] = L3.dim();
  out.diagnostics["eq0_constant"] = K_eq0;
  out.diagnostics["section_diameter"] = diam.value;
  out.diagnostics["degenerate_intersection"] = degenerate ? 1.0 : 0.0;

  // Levy-mean prediction for the same constant, with the conjugate-induced
  // norm standing in for the dual of W.
  const double qc = (q == 1.0) ? kInf : (q == kInf ? 1.0 : q / (q - 1.0));
  const LevyMeanEstimate mw =
      levy_mean(NormBody::induced(spectrum, qc), samples, seed + 2);
  out.diagnostics["eq0_levy_prediction"] = mw.value / (1.0 - lambda);
  return out;
}

double rho_n(int n, double p, double q) {
  const bool q_end = (q == 1.0);
  const bool p_end = (p == kInf);
  if (!q_end && !p_end) return 1.0;
  if (q_end && p_end) return std::log(static_cast<double>(n));
  return std::sqrt(std::log(static_cast<double>(n)));
}

SpectrumSelection spectrum_for_dim(Manifold manifold, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  switch (manifold) {
    case Manifold::Torus1:
      return select_prefix_dim(torus_system(1, (n + 1) / 2), n);
    case Manifold::Torus2:
      return select_prefix_dim(
          torus_system(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1), n);
    case Manifold::Torus3:
      return select_prefix_dim(
          torus_system(3, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)))) + 1), n);
    case Manifold::Sphere2: {
      const int lmax = std::min(64, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
      return select_prefix_dim(sphere_system(lmax), n);
    }
  }
  throw std::invalid_argument("unknown manifold");
}

std::vector<Theorem3Row> theorem3_experiment(Manifold manifold, const std::vector<int>& n_list,
                                             double eps, double p, double q, int trials,
                                             std::uint64_t seed, int restarts, int iterations) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
  for (int n : n_list)
    if (eps * n < 2.0)
      throw std::invalid_argument("epsilon * n must be at least 2");
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  std::vector<Theorem3Row> rows;
  for (int n_req : n_list) {
    const SpectrumSelection spectrum = spectrum_for_dim(manifold, n_req);
    const int n = spectrum.n;
    const int s = static_cast<int>(std::ceil(eps * n));

    Theorem3Row row;
    row.n = n;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t sub_seed = combine_seed(seed, static_cast<std::uint64_t>(n),
                                                  static_cast<std::uint64_t>(t));
      const Subspace L = random_subspace(n, s, sub_seed);
      const FlatSearchResult res =
          ratio_minimize(spectrum, L, p, q, restarts, iterations, sub_seed + 1);
      row.trial_ratios.push_back(res.ratio);
      row.worst_ratio = std::max(row.worst_ratio, res.ratio);
    }
    row.rho = rho_n(n, p, q);
    row.normalized = row.worst_ratio / row.rho;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace flatpoly
