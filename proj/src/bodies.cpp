#include "flatpoly/bodies.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/Dense>

#include "flatpoly/digest.hpp"
#include "flatpoly/rng.hpp"
#include "flatpoly/sphere_opt.hpp"

namespace flatpoly {

namespace {

double lp_vector_norm(const Eigen::VectorXd& x, double p) {
  if (p == kInf) return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (p == 2.0) return x.norm();
  if (p == 1.0) return x.cwiseAbs().sum();
  double acc = 0.0;
  for (long i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), p);
  return std::pow(acc, 1.0 / p);
}

Eigen::VectorXd lp_vector_subgradient(const Eigen::VectorXd& x, double p) {
  const long n = x.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (p == kInf) {
    long idx = 0;
    const double m = x.cwiseAbs().maxCoeff(&idx);
    if (m > 0.0) g[idx] = (x[idx] >= 0.0) ? 1.0 : -1.0;
    return g;
  }
  if (p == 1.0) {
    for (long i = 0; i < n; ++i) g[i] = (x[i] > 0.0) ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
    return g;
  }
  const double norm = lp_vector_norm(x, p);
  if (norm == 0.0) return g;
  for (long i = 0; i < n; ++i) {
    const double a = std::abs(x[i]);
    g[i] = (a == 0.0) ? 0.0
                      : std::pow(a / norm, p - 1.0) * ((x[i] >= 0.0) ? 1.0 : -1.0);
  }
  return g;
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

QuadraturePtr default_induced_rule(const SpectrumSelection& spectrum, double p) {
  // For p = infinity the body exposes the grid sup norm (8x the spectral
  // resolution), which is itself a norm on the spectrum span.
  if (p == kInf) return shared_sup_grid_rule(spectrum);
  return default_rule(spectrum, p);
}

}  // namespace

NormBody NormBody::lp(int n, double p) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be in [1, infinity]");
  return NormBody(n, LpBall{p});
}

NormBody NormBody::ellipsoid(const Eigen::MatrixXd& shape) {
  if (shape.rows() != shape.cols() || shape.rows() < 1)
    throw std::invalid_argument("shape matrix must be square");
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > 1e-10 * shape.cwiseAbs().maxCoeff())
    throw std::invalid_argument("shape matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("shape matrix must be positive definite");
  EllipsoidBody e;
  e.shape = 0.5 * (shape + shape.transpose());
  e.shape_inv = es.eigenvectors() *
                es.eigenvalues().cwiseInverse().asDiagonal() *
                es.eigenvectors().transpose();
  e.eig_min = es.eigenvalues().minCoeff();
  e.eig_max = es.eigenvalues().maxCoeff();
  return NormBody(static_cast<int>(shape.rows()), std::move(e));
}

NormBody NormBody::induced(SpectrumSelection spectrum, double p, QuadraturePtr rule) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be in [1, infinity]");
  InducedBody body;
  body.p = p;
  body.rule = rule ? std::move(rule) : default_induced_rule(spectrum, p);
  body.table = std::make_shared<NodeBasis>(NodeBasis::build(spectrum, *body.rule));
  const int n = spectrum.n;
  body.spectrum = std::move(spectrum);
  return NormBody(n, std::move(body));
}

NormBody NormBody::section_of(const NormBody& parent, const Subspace& L) {
  if (L.ambient_dim() != parent.dim())
    throw std::invalid_argument("subspace ambient dimension mismatch");
  if (const auto* e = std::get_if<EllipsoidBody>(&parent.kind_)) {
    NormBody out = ellipsoid(L.basis.transpose() * e->shape * L.basis);
    out.scale_ = parent.scale_;
    return out;
  }
  SectionBody s;
  s.parent = std::make_shared<NormBody>(parent);
  s.section = L;
  NormBody out(L.dim(), std::move(s));
  out.scale_ = 1.0;  // parent scale already applies through its norm
  return out;
}

NormBody NormBody::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scale must be positive");
  NormBody out = *this;
  out.scale_ *= c;
  if (out.circumradius_hint_) *out.circumradius_hint_ *= c;
  return out;
}

void NormBody::set_circumradius_hint(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("circumradius must be positive");
  circumradius_hint_ = r;
}

double NormBody::norm(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("dimension mismatch in norm()");
  double base = 0.0;
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    base = lp_vector_norm(x, l->p);
  } else if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    base = std::sqrt(x.dot(e->shape * x));
  } else if (const auto* ib = std::get_if<InducedBody>(&kind_)) {
    base = (ib->p == kInf) ? ib->table->max_abs(x) : ib->table->lp(x, ib->p);
  } else {
    const auto& s = std::get<SectionBody>(kind_);
    base = s.parent->norm(s.section.basis * x);
  }
  return base / scale_;
}

Eigen::VectorXd NormBody::norm_subgradient(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("dimension mismatch in norm_subgradient()");
  Eigen::VectorXd g;
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    g = lp_vector_subgradient(x, l->p);
  } else if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    const double v = std::sqrt(x.dot(e->shape * x));
    g = (v == 0.0) ? Eigen::VectorXd::Zero(dim_) : Eigen::VectorXd(e->shape * x / v);
  } else if (const auto* ib = std::get_if<InducedBody>(&kind_)) {
    g = (ib->p == kInf) ? ib->table->max_abs_subgradient(x)
                        : ib->table->lp_gradient(x, ib->p);
  } else {
    const auto& s = std::get<SectionBody>(kind_);
    g = s.section.basis.transpose() * s.parent->norm_subgradient(s.section.basis * x);
  }
  return g / scale_;
}

bool NormBody::has_exact_dual() const {
  return std::holds_alternative<LpBall>(kind_) || std::holds_alternative<EllipsoidBody>(kind_);
}

DualNormValue NormBody::dual_norm(const Eigen::VectorXd& x, int restarts, int iterations,
                                  std::uint64_t seed) const {
  if (x.size() != dim_) throw std::invalid_argument("dimension mismatch in dual_norm()");
  DualNormValue out;
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    out.value = lp_vector_norm(x, conjugate_exponent(l->p)) * scale_;
    out.exact = out.converged = true;
    return out;
  }
  if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    out.value = std::sqrt(x.dot(e->shape_inv * x)) * scale_;
    out.exact = out.converged = true;
    return out;
  }
  const double xn = x.norm();
  if (xn == 0.0) {
    out.value = 0.0;
    out.exact = out.converged = true;
    return out;
  }
  // sup <x, w> / norm(w): minimize norm(w) / |<x, w>| over the sphere.
  auto value = [&](const Eigen::VectorXd& w) {
    const double d = std::abs(x.dot(w));
    if (d < 1e-300) return 1e300;
    return norm(w) / d;
  };
  auto grad = [&](const Eigen::VectorXd& w) -> Eigen::VectorXd {
    const double d = x.dot(w);
    const double ad = std::abs(d);
    if (ad < 1e-300) return -x;
    const double nv = norm(w);
    const double sgn = (d >= 0.0) ? 1.0 : -1.0;
    return (norm_subgradient(w) * ad - nv * sgn * x) / (ad * ad);
  };
  SphereOptOptions opts;
  opts.restarts = restarts;
  opts.iterations = iterations;
  opts.seed = seed;
  opts.warm_starts.push_back(x / xn);
  const SphereOptResult res = minimize_on_sphere(dim_, value, grad, opts);
  out.value = (res.value > 0.0) ? 1.0 / res.value : 0.0;
  out.exact = false;
  out.converged = res.converged;
  return out;
}

NormBody NormBody::polar() const {
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    NormBody out = lp(dim_, conjugate_exponent(l->p));
    out.scale_ = 1.0 / scale_;
    return out;
  }
  if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    NormBody out = ellipsoid(e->shape_inv);
    out.scale_ = 1.0 / scale_;
    return out;
  }
  throw std::invalid_argument("polar() needs a closed-form dual (Lp or ellipsoid)");
}

double NormBody::circumradius() const {
  if (circumradius_hint_) return *circumradius_hint_;
  double base = 0.0;
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    base = (l->p <= 2.0) ? 1.0
                         : std::pow(static_cast<double>(dim_), 0.5 - 1.0 / l->p);
  } else if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    base = 1.0 / std::sqrt(e->eig_min);
  } else if (const auto* ib = std::get_if<InducedBody>(&kind_)) {
    // Nikolskii with C = 1: ||t||_2 <= n^{(1/p - 1/2)_+} ||t||_p.
    base = (ib->p >= 2.0)
               ? 1.0
               : std::pow(static_cast<double>(dim_), 1.0 / ib->p - 0.5);
  } else {
    base = std::get<SectionBody>(kind_).parent->circumradius();
    return base;  // parent radius already includes the parent scale
  }
  return base * scale_;
}

double NormBody::norm_upper_bound() const {
  double base = 0.0;
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    base = (l->p >= 2.0) ? 1.0
                         : std::pow(static_cast<double>(dim_), 1.0 / l->p - 0.5);
  } else if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    base = std::sqrt(e->eig_max);
  } else if (const auto* ib = std::get_if<InducedBody>(&kind_)) {
    // ||t||_p <= ||t||_inf <= sqrt(n) ||t||_2 by the addition theorem, and
    // ||t||_p <= ||t||_2 when p <= 2.
    base = (ib->p <= 2.0) ? 1.0 : std::sqrt(static_cast<double>(dim_));
  } else {
    return std::get<SectionBody>(kind_).parent->norm_upper_bound();
  }
  return base / scale_;
}

std::string NormBody::digest() const {
  std::uint64_t h = fnv1a_str("body");
  h = fnv1a(&dim_, sizeof(dim_), h);
  h = fnv1a(&scale_, sizeof(scale_), h);
  if (const auto* l = std::get_if<LpBall>(&kind_)) {
    h = fnv1a_str("lp", h);
    h = fnv1a(&l->p, sizeof(l->p), h);
  } else if (const auto* e = std::get_if<EllipsoidBody>(&kind_)) {
    h = fnv1a_str("ellipsoid", h);
    h = fnv1a(e->shape.data(), sizeof(double) * static_cast<std::size_t>(e->shape.size()), h);
  } else if (const auto* ib = std::get_if<InducedBody>(&kind_)) {
    h = fnv1a_str("induced:" + manifold_name(ib->spectrum.system->manifold()), h);
    h = fnv1a(&ib->p, sizeof(ib->p), h);
    h = fnv1a(ib->spectrum.blocks.data(), sizeof(int) * ib->spectrum.blocks.size(), h);
  } else {
    const auto& s = std::get<SectionBody>(kind_);
    h = fnv1a_str("section:" + s.parent->digest(), h);
    h = fnv1a(s.section.basis.data(),
              sizeof(double) * static_cast<std::size_t>(s.section.basis.size()), h);
  }
  return hex64(h);
}

double ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

namespace {

VolumeEstimate hit_or_miss(const NormBody& body, const Eigen::MatrixXd* basis,
                           const Eigen::VectorXd* offset, long samples, std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("zero samples");
  const int s = basis ? static_cast<int>(basis->cols()) : body.dim();
  double radius = body.circumradius();
  if (!std::isfinite(radius)) throw std::invalid_argument("no finite circumradius available");
  if (offset) radius += offset->norm();

  constexpr long kChunk = 8192;
  long hits = 0;
  long done = 0;
  for (long chunk = 0; done < samples; ++chunk) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(chunk));
    const long count = std::min(kChunk, samples - done);
    for (long i = 0; i < count; ++i) {
      Eigen::VectorXd u = rng.sphere_vector(s);
      u *= radius * std::pow(rng.uniform01(), 1.0 / s);
      Eigen::VectorXd x = basis ? Eigen::VectorXd(*basis * u) : u;
      if (offset) x += *offset;
      if (body.norm(x) <= 1.0) ++hits;
    }
    done += count;
  }

  const double phat = static_cast<double>(hits) / static_cast<double>(samples);
  const double cell = ball_volume(s) * std::pow(radius, s);
  VolumeEstimate est;
  est.value = cell * phat;
  est.stderr_ = cell * std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  est.samples = samples;
  return est;
}

}  // namespace

VolumeEstimate mc_volume(const NormBody& body, const std::optional<Subspace>& L,
                         long samples, std::uint64_t seed) {
  if (L) {
    if (L->ambient_dim() != body.dim())
      throw std::invalid_argument("subspace ambient dimension mismatch");
    return hit_or_miss(body, &L->basis, nullptr, samples, seed);
  }
  return hit_or_miss(body, nullptr, nullptr, samples, seed);
}

VolumeEstimate mc_section_volume(const NormBody& body, const Subspace& L,
                                 const Eigen::VectorXd& offset, long samples,
                                 std::uint64_t seed) {
  if (L.ambient_dim() != body.dim())
    throw std::invalid_argument("subspace ambient dimension mismatch");
  if (offset.size() != body.dim()) throw std::invalid_argument("offset dimension mismatch");
  return hit_or_miss(body, &L.basis, &offset, samples, seed);
}

DiameterResult diameter_of_section(const NormBody& body, const Subspace& L, int restarts,
                                   std::uint64_t seed) {
  if (L.ambient_dim() != body.dim())
    throw std::invalid_argument("subspace ambient dimension mismatch");
  if (L.dim() < 1) throw std::invalid_argument("subspace must have dimension >= 1");

  DiameterResult out;
  if (const auto* e = std::get_if<EllipsoidBody>(&body.kind())) {
    // Exact oracle: the longest section direction is the bottom eigenvector
    // of the restricted shape matrix.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.basis.transpose() * e->shape * L.basis);
    const double lam = es.eigenvalues().minCoeff();
    Eigen::VectorXd v = es.eigenvectors().col(0);
    const double reach = body.scale() / std::sqrt(lam);
    out.value = 2.0 * reach;
    out.witness = L.basis * v * reach;
    out.converged = true;
    return out;
  }

  auto value = [&](const Eigen::VectorXd& v) { return body.norm(L.basis * v); };
  auto grad = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return L.basis.transpose() * body.norm_subgradient(L.basis * v);
  };
  SphereOptOptions opts;
  opts.restarts = restarts;
  opts.iterations = 300;
  opts.seed = seed;
  if (L.dim() <= 16)
    for (int i = 0; i < L.dim(); ++i)
      opts.warm_starts.push_back(Eigen::VectorXd::Unit(L.dim(), i));
  const SphereOptResult res = minimize_on_sphere(L.dim(), value, grad, opts);
  out.value = 2.0 / res.value;
  out.witness = L.basis * res.x / res.value;
  out.converged = res.converged;
  return out;
}

}  // namespace flatpoly
