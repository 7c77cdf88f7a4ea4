#pragma once

#include <cstdint>
#include <cmath>

#include <Eigen/Core>

namespace flatpoly {

// Mixes a 64-bit state and returns the next value of the splitmix64 stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with hand-rolled uniform/normal transforms. The standard
// library distributions are implementation-defined, so every draw here is
// pinned down to keep seeded runs bit-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  // Independent stream for chunk `stream` of a run seeded with `seed`.
  // Chunked estimators draw from per-chunk streams and reduce in index
  // order, so the schedule cannot change the result.
  static Rng derived(std::uint64_t seed, std::uint64_t stream) {
    return Rng(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  // Uniform point on the unit sphere S^{n-1}.
  Eigen::VectorXd sphere_vector(int n) {
    Eigen::VectorXd v = gaussian_vector(n);
    double norm = v.norm();
    while (norm == 0.0) {  // probability ~2^-64 per draw, but stay total
      v = gaussian_vector(n);
      norm = v.norm();
    }
    return v / norm;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace flatpoly
