#include "flatpoly/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "flatpoly/fft.hpp"
#include "flatpoly/rng.hpp"

namespace flatpoly {

SignSequence random_sign_poly(int length, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  Rng rng(seed);
  SignSequence seq;
  seq.signs.resize(static_cast<std::size_t>(length));
  for (auto& s : seq.signs) s = (rng.next_u64() & 1u) ? 1 : -1;
  return seq;
}

SignSequence rudin_shapiro(int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (k > 20) throw std::invalid_argument("length cap: k <= 20");
  std::vector<int> p{1}, q{1};
  for (int step = 0; step < k; ++step) {
    std::vector<int> p_next = p, q_next = p;
    p_next.insert(p_next.end(), q.begin(), q.end());
    for (int s : q) q_next.push_back(-s);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  return SignSequence{std::move(p)};
}

double exp_poly_grid_sup(const std::vector<std::complex<double>>& coeffs, int grid_points) {
  if (grid_points < 1) throw std::invalid_argument("need a nonempty grid");
  const std::size_t m = static_cast<std::size_t>(grid_points);
  if ((m & (m - 1)) == 0 && m >= coeffs.size()) {
    std::vector<std::complex<double>> a(m, {0.0, 0.0});
    std::copy(coeffs.begin(), coeffs.end(), a.begin());
    fft_inplace(a);
    double best = 0.0;
    for (const auto& v : a) best = std::max(best, std::abs(v));
    return best;
  }
  double best = 0.0;
  for (int j = 0; j < grid_points; ++j) {
    const double theta = 2.0 * M_PI * j / grid_points;
    const std::complex<double> w(std::cos(theta), std::sin(theta));
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
    best = std::max(best, std::abs(acc));
  }
  return best;
}

double sign_poly_sup(const SignSequence& seq) {
  std::vector<std::complex<double>> coeffs;
  coeffs.reserve(seq.signs.size());
  for (int s : seq.signs) coeffs.emplace_back(static_cast<double>(s), 0.0);
  return exp_poly_grid_sup(coeffs, 64 * seq.length());
}

RudinCheck rudin_check(int length, int attempts, std::uint64_t seed) {
  if (length < 4) throw std::invalid_argument("length must be >= 4");
  if (attempts < 1) throw std::invalid_argument("need at least one attempt");
  RudinCheck out;
  out.best_sup = std::numeric_limits<double>::infinity();
  for (int a = 0; a < attempts; ++a) {
    const SignSequence seq = random_sign_poly(length, seed + static_cast<std::uint64_t>(a));
    out.best_sup = std::min(out.best_sup, sign_poly_sup(seq));
  }
  out.passed = out.best_sup < 5.0 * std::sqrt(static_cast<double>(length));
  return out;
}

MomentCheck moment_check(int degree, int p, int trials, std::uint64_t seed, bool rademacher,
                         double tolerance) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (p < 2 || p % 2 != 0 || p > 8)
    throw std::invalid_argument("p must be an even integer in {2, 4, 6, 8}");

  MomentCheck out;
  out.target = std::tgamma(1.0 + 0.5 * p);

  if (p == 2) {
    // Parseval: E ||q||_2^2 = N + 1 for unit-variance coefficients.
    out.ratio = (degree + 1.0) / degree;
    out.passed = std::abs(out.ratio / out.target - 1.0) <= tolerance;
    return out;
  }

  if (trials < 1) throw std::invalid_argument("need at least one trial");
  // |q|^p is a trigonometric polynomial of degree p*N/2 in each direction,
  // so any power-of-two grid with more than p*N points averages it exactly.
  const std::size_t grid = next_pow2(static_cast<std::size_t>(p) * degree + 1);
  const double scale = std::pow(static_cast<double>(degree), 0.5 * p);

  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
    std::vector<std::complex<double>> a(grid, {0.0, 0.0});
    for (int k = 0; k <= degree; ++k) {
      const double x = rademacher ? ((rng.next_u64() & 1u) ? 1.0 : -1.0) : rng.normal();
      a[static_cast<std::size_t>(k)] = {x, 0.0};
    }
    fft_inplace(a);
    double power = 0.0;
    for (const auto& v : a) power += std::pow(std::abs(v), p);
    acc += power / static_cast<double>(grid);
  }
  out.ratio = acc / trials / scale;
  out.passed = std::abs(out.ratio / out.target - 1.0) <= tolerance;
  return out;
}

}  // namespace flatpoly
