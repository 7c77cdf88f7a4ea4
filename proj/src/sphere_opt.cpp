#include "flatpoly/sphere_opt.hpp"

#include <cmath>
#include <stdexcept>

namespace flatpoly {

namespace {

using Vec = Eigen::VectorXd;
using Fn = std::function<double(const Vec&)>;
using Grad = std::function<Eigen::VectorXd(const Vec&)>;

struct RunResult {
  Vec x;
  double value;
  bool converged;
  int iterations;
};

// Projected subgradient descent with backtracking. Stalls (no descent along
// the projected subgradient at any resolvable step) trigger small random
// tangent kicks; the best visited point is what counts.
RunResult descend(const Fn& value, const Grad& subgrad, Vec x, int iterations, Rng& rng) {
  double fx = value(x);
  Vec best_x = x;
  double best_f = fx;
  double step = 0.25;
  int kicks_since_improvement = 0;
  bool converged = false;
  int used = 0;

  auto kick = [&]() {
    Vec d = rng.gaussian_vector(static_cast<int>(x.size()));
    d -= d.dot(x) * x;
    const double dn = d.norm();
    if (dn > 0.0) x = (x + (2e-3 / dn) * d).normalized();
    fx = value(x);
    ++kicks_since_improvement;
  };

  for (int it = 0; it < iterations; ++it) {
    ++used;
    if (kicks_since_improvement > 6) {
      converged = true;
      break;
    }
    Vec g = subgrad(x);
    Vec gt = g - g.dot(x) * x;
    const double gnorm = gt.norm();
    if (gnorm < 1e-13 * std::max(1.0, std::abs(fx))) {
      kick();
      continue;
    }
    const Vec dir = gt / gnorm;
    double trial = std::clamp(step, 1e-6, 1.0);
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      Vec cand = (x - trial * dir).normalized();
      const double fc = value(cand);
      if (fc < fx - 1e-14 * std::abs(fx)) {
        x = std::move(cand);
        fx = fc;
        step = std::min(trial * 1.5, 1.0);
        accepted = true;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) {
      kick();
      continue;
    }
    if (fx < best_f - 1e-15 * std::abs(best_f)) {
      best_f = fx;
      best_x = x;
      kicks_since_improvement = 0;
    }
  }
  return {std::move(best_x), best_f, converged, used};
}

// Golden-section minimization over a rotation angle in the plane spanned by
// x and each coordinate direction; escapes the polyhedral kinks and flat
// valleys the subgradient step crawls on.
bool polish_rotations(const Fn& value, Vec& x, double& fx) {
  const int n = static_cast<int>(x.size());
  const double gr = 0.6180339887498949;
  bool improved_any = false;
  for (int cycle = 0; cycle < 2; ++cycle) {
    for (int i = 0; i < n; ++i) {
      Vec w = Vec::Zero(n);
      w[i] = 1.0;
      w -= w.dot(x) * x;
      const double wn = w.norm();
      if (wn < 1e-10) continue;
      w /= wn;
      double lo = -0.6, hi = 0.6;
      auto rot = [&](double ang) { return value(std::cos(ang) * x + std::sin(ang) * w); };
      double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
      double fc = rot(c), fd = rot(d);
      for (int it = 0; it < 40; ++it) {
        if (fc <= fd) {
          hi = d; d = c; fd = fc;
          c = hi - gr * (hi - lo);
          fc = rot(c);
        } else {
          lo = c; c = d; fc = fd;
          d = lo + gr * (hi - lo);
          fd = rot(d);
        }
      }
      const double ang = 0.5 * (lo + hi);
      const double fm = rot(ang);
      if (fm < fx - 1e-15 * std::abs(fx)) {
        x = (std::cos(ang) * x + std::sin(ang) * w).normalized();
        fx = fm;
        improved_any = true;
      }
    }
  }
  return improved_any;
}

}  // namespace

SphereOptResult minimize_on_sphere(int dim, const Fn& value, const Grad& subgrad,
                                   const SphereOptOptions& opts) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be >= 1");

  SphereOptResult best;
  best.value = std::numeric_limits<double>::infinity();

  if (dim == 1) {
    Vec x(1);
    x[0] = 1.0;
    best.x = x;
    best.value = value(x);
    best.converged = true;
    best.restart_values.push_back(best.value);
    return best;
  }

  std::vector<Vec> starts = opts.warm_starts;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng = Rng::derived(opts.seed, static_cast<std::uint64_t>(r));
    starts.push_back(rng.sphere_vector(dim));
  }

  for (std::size_t s = 0; s < starts.size(); ++s) {
    Rng rng = Rng::derived(opts.seed, 0x1000 + s);
    Vec x0 = starts[s];
    const double n0 = x0.norm();
    if (n0 == 0.0) continue;
    x0 /= n0;

    RunResult run = descend(value, subgrad, std::move(x0), opts.iterations, rng);
    if (opts.polish) {
      // Alternate polish and short descent rounds while they keep paying.
      for (int round = 0; round < 4; ++round) {
        const bool improved = polish_rotations(value, run.x, run.value);
        if (!improved) break;
        RunResult again =
            descend(value, subgrad, run.x, std::max(opts.iterations / 4, 40), rng);
        run.iterations += again.iterations;
        if (again.value < run.value) {
          run.value = again.value;
          run.x = again.x;
        }
      }
    }
    best.restart_values.push_back(run.value);
    best.iterations += run.iterations;
    if (run.value < best.value) {
      best.value = run.value;
      best.x = run.x;
      best.converged = run.converged;
    }
  }
  return best;
}

}  // namespace flatpoly
