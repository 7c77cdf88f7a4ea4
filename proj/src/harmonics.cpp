#include "flatpoly/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace flatpoly {

int coord_dim(Manifold m) {
  switch (m) {
    case Manifold::Torus1: return 1;
    case Manifold::Torus2: return 2;
    case Manifold::Torus3: return 3;
    case Manifold::Sphere2: return 2;
  }
  return 0;
}

std::string manifold_name(Manifold m) {
  switch (m) {
    case Manifold::Torus1: return "torus1";
    case Manifold::Torus2: return "torus2";
    case Manifold::Torus3: return "torus3";
    case Manifold::Sphere2: return "sphere2";
  }
  return "?";
}

Manifold manifold_from_name(const std::string& name) {
  if (name == "torus1") return Manifold::Torus1;
  if (name == "torus2") return Manifold::Torus2;
  if (name == "torus3") return Manifold::Torus3;
  if (name == "sphere2") return Manifold::Sphere2;
  throw std::invalid_argument("unknown manifold: " + name);
}

OrthonormalSystem::OrthonormalSystem(Manifold m, std::vector<EigenBlock> blocks,
                                     double class_k_constant)
    : manifold_(m), blocks_(std::move(blocks)), class_k_constant_(class_k_constant) {
  int offset = 0;
  for (auto& b : blocks_) {
    b.offset = offset;
    offset += b.dim;
  }
  total_dim_ = offset;
}

const EigenBlock& OrthonormalSystem::block(int j) const {
  if (j < 0 || j >= block_count())
    throw std::out_of_range("block index out of range");
  return blocks_[static_cast<std::size_t>(j)];
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Normalized associated Legendre values S_l^m(x) for all 0 <= m <= l <= lmax,
// where S_l^m = sqrt((2l+1) (l-m)! / (l+m)!) P_l^m (no Condon-Shortley sign).
// Row-major triangle: table[l * (lmax + 1) + m].
void legendre_table(int lmax, double x, std::vector<double>& table) {
  const int stride = lmax + 1;
  table.assign(static_cast<std::size_t>(stride) * stride, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));

  table[0] = 1.0;
  for (int m = 1; m <= lmax; ++m)
    table[m * stride + m] =
        std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * table[(m - 1) * stride + (m - 1)];
  for (int m = 0; m < lmax; ++m)
    table[(m + 1) * stride + m] = std::sqrt(2.0 * m + 3.0) * x * table[m * stride + m];
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) /
                                 (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      table[l * stride + m] =
          a * (x * table[(l - 1) * stride + m] - b * table[(l - 2) * stride + m]);
    }
  }
}

thread_local std::vector<double> tl_legendre;

// Real spherical harmonics of degree l at (theta, phi), normalized in L2 of
// the uniform probability measure on S^2, slot order m = 0, then for each
// m >= 1 the cos and sin components.
void eval_sphere_block(int l, const Coord& x, double* out) {
  legendre_table(l, std::cos(x[0]), tl_legendre);
  const int stride = l + 1;
  out[0] = tl_legendre[l * stride + 0];
  for (int m = 1; m <= l; ++m) {
    const double base = kSqrt2 * tl_legendre[l * stride + m];
    out[2 * m - 1] = base * std::cos(m * x[1]);
    out[2 * m] = base * std::sin(m * x[1]);
  }
}

void eval_torus_block(const EigenBlock& b, int d, const Coord& x, double* out) {
  int pos = 0;
  for (const auto& k : b.freqs) {
    double phase = 0.0;
    for (int i = 0; i < d; ++i) phase += k[i] * x[i];
    if (k[0] == 0 && k[1] == 0 && k[2] == 0) {
      out[pos++] = 1.0;
    } else {
      out[pos++] = kSqrt2 * std::cos(phase);
      out[pos++] = kSqrt2 * std::sin(phase);
    }
  }
}

}  // namespace

void OrthonormalSystem::evaluate_block(int j, const Coord& x, double* out) const {
  const EigenBlock& b = block(j);
  if (manifold_ == Manifold::Sphere2)
    eval_sphere_block(b.sphere_l, x, out);
  else
    eval_torus_block(b, coord_dim(), x, out);
}

Eigen::VectorXd OrthonormalSystem::evaluate_block(int j, const Coord& x) const {
  Eigen::VectorXd v(block(j).dim);
  evaluate_block(j, x, v.data());
  return v;
}

SystemPtr torus_system(int d, int max_freq) {
  if (d < 1 || d > 3) throw std::invalid_argument("torus dimension must be 1..3");
  if (max_freq < 0) throw std::invalid_argument("max_freq must be >= 0");

  // Canonical representatives: first nonzero component positive. Each
  // representative k != 0 contributes the pair {sqrt2 cos, sqrt2 sin}, so a
  // block's dimension equals the number of lattice vectors at its eigenvalue.
  std::map<long, std::vector<std::array<int, 3>>> by_eigenvalue;
  by_eigenvalue[0].push_back({0, 0, 0});
  const long cap = static_cast<long>(max_freq) * max_freq;
  const int lo = (d >= 1) ? -max_freq : 0;
  for (int k1 = 0; k1 <= max_freq; ++k1) {
    const int lo2 = (d >= 2) ? ((k1 == 0) ? 0 : lo) : 0;
    const int hi2 = (d >= 2) ? max_freq : 0;
    for (int k2 = lo2; k2 <= hi2; ++k2) {
      const bool head_zero = (k1 == 0 && k2 == 0);
      const int lo3 = (d >= 3) ? (head_zero ? 0 : lo) : 0;
      const int hi3 = (d >= 3) ? max_freq : 0;
      for (int k3 = lo3; k3 <= hi3; ++k3) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        const long sq = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2 +
                        static_cast<long>(k3) * k3;
        if (sq > cap) continue;
        by_eigenvalue[sq].push_back({k1, k2, k3});
      }
    }
  }

  std::vector<EigenBlock> blocks;
  blocks.reserve(by_eigenvalue.size());
  for (auto& [sq, freqs] : by_eigenvalue) {
    std::sort(freqs.begin(), freqs.end());
    EigenBlock b;
    b.eigenvalue = static_cast<double>(sq);
    b.dim = (sq == 0) ? 1 : 2 * static_cast<int>(freqs.size());
    b.freqs = std::move(freqs);
    blocks.push_back(std::move(b));
  }
  Manifold m = (d == 1) ? Manifold::Torus1 : (d == 2) ? Manifold::Torus2 : Manifold::Torus3;
  return std::make_shared<OrthonormalSystem>(m, std::move(blocks));
}

SystemPtr sphere_system(int lmax) {
  if (lmax < 0 || lmax > 64)
    throw std::invalid_argument("sphere degree must be in 0..64");
  std::vector<EigenBlock> blocks;
  blocks.reserve(static_cast<std::size_t>(lmax) + 1);
  for (int l = 0; l <= lmax; ++l) {
    EigenBlock b;
    b.eigenvalue = static_cast<double>(l) * (l + 1);
    b.dim = 2 * l + 1;
    b.sphere_l = l;
    blocks.push_back(std::move(b));
  }
  return std::make_shared<OrthonormalSystem>(Manifold::Sphere2, std::move(blocks));
}

void SpectrumSelection::evaluate(const Coord& x, double* out) const {
  int pos = 0;
  for (int j : blocks) {
    system->evaluate_block(j, x, out + pos);
    pos += system->block(j).dim;
  }
}

Eigen::VectorXd SpectrumSelection::evaluate(const Coord& x) const {
  Eigen::VectorXd v(n);
  evaluate(x, v.data());
  return v;
}

int SpectrumSelection::max_degree() const {
  int deg = 0;
  for (int j : blocks) {
    const EigenBlock& b = system->block(j);
    if (system->manifold() == Manifold::Sphere2) {
      deg = std::max(deg, b.sphere_l);
    } else {
      for (const auto& k : b.freqs)
        deg = std::max({deg, std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
    }
  }
  return deg;
}

int SpectrumSelection::slot(int s, int t) const {
  int pos = 0;
  for (int i = 0; i < s; ++i) pos += system->block(blocks[static_cast<std::size_t>(i)]).dim;
  return pos + t;
}

SpectrumSelection select_blocks(SystemPtr system, std::vector<int> blocks) {
  if (blocks.empty()) throw std::invalid_argument("spectrum needs at least one block");
  for (std::size_t i = 1; i < blocks.size(); ++i)
    if (blocks[i] <= blocks[i - 1])
      throw std::invalid_argument("block indices must be strictly increasing");
  SpectrumSelection sel;
  sel.n = 0;
  for (int j : blocks) sel.n += system->block(j).dim;
  sel.system = std::move(system);
  sel.blocks = std::move(blocks);
  return sel;
}

SpectrumSelection select_first_blocks(SystemPtr system, int m) {
  if (m < 1 || m > system->block_count())
    throw std::invalid_argument("invalid number of blocks");
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  return select_blocks(std::move(system), std::move(idx));
}

SpectrumSelection select_prefix_dim(SystemPtr system, int max_dim) {
  std::vector<int> idx;
  int total = 0;
  for (int j = 0; j < system->block_count(); ++j) {
    const int d = system->block(j).dim;
    if (total + d > max_dim) break;
    idx.push_back(j);
    total += d;
  }
  if (idx.empty())
    throw std::invalid_argument("max_dim too small for the leading block");
  return select_blocks(std::move(system), std::move(idx));
}

double kernel(const SpectrumSelection& spectrum, const Coord& x, const Coord& y) {
  return spectrum.evaluate(x).dot(spectrum.evaluate(y));
}

Eigen::VectorXd kernel_column(const SpectrumSelection& spectrum, const Coord& y) {
  return spectrum.evaluate(y);
}

Coord origin_point(Manifold) { return {0.0, 0.0, 0.0}; }

Coord random_point(Manifold m, Rng& rng) {
  Coord x{0.0, 0.0, 0.0};
  if (m == Manifold::Sphere2) {
    x[0] = std::acos(1.0 - 2.0 * rng.uniform01());  // area-uniform colatitude
    x[1] = rng.uniform(0.0, 2.0 * M_PI);
  } else {
    for (int i = 0; i < coord_dim(m); ++i) x[i] = rng.uniform(0.0, 2.0 * M_PI);
  }
  return x;
}

ClassKReport class_k_verify(const SpectrumSelection& spectrum,
                            const std::vector<Coord>& points, double tol) {
  if (points.empty()) throw std::invalid_argument("empty sample set");
  ClassKReport report;
  Eigen::VectorXd vals;
  for (const Coord& x : points) {
    int pos = 0;
    vals = spectrum.evaluate(x);
    for (int j : spectrum.blocks) {
      const int d = spectrum.system->block(j).dim;
      const double sum = vals.segment(pos, d).squaredNorm();
      report.max_deviation = std::max(report.max_deviation, std::abs(sum - d));
      pos += d;
    }
  }
  report.ok = report.max_deviation <= tol;
  return report;
}

}  // namespace flatpoly
