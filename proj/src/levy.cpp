#include "flatpoly/levy.hpp"

#include <cmath>
#include <stdexcept>

namespace flatpoly {

namespace {
constexpr long kChunk = 4096;
}

Eigen::MatrixXd sphere_sample(int n, long count, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (count < 0) throw std::invalid_argument("negative sample count");
  Eigen::MatrixXd out(n, count);
  for (long chunk = 0, done = 0; done < count; ++chunk) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(chunk));
    const long take = std::min(kChunk, count - done);
    for (long i = 0; i < take; ++i) out.col(done + i) = rng.sphere_vector(n);
    done += take;
  }
  return out;
}

LevyMeanEstimate levy_mean(const NormBody& body, long samples, std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("need at least one sample");
  const int n = body.dim();
  double sum = 0.0, sumsq = 0.0;
  for (long chunk = 0, done = 0; done < samples; ++chunk) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(chunk));
    const long take = std::min(kChunk, samples - done);
    for (long i = 0; i < take; ++i) {
      const double v = body.norm(rng.sphere_vector(n));
      sum += v;
      sumsq += v * v;
    }
    done += take;
  }
  LevyMeanEstimate est;
  est.samples = samples;
  est.value = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sumsq / static_cast<double>(samples) - est.value * est.value);
  est.stderr_ = std::sqrt(var / static_cast<double>(samples));
  est.body_digest = body.digest();
  est.seed = seed;
  return est;
}

std::vector<Theorem2Row> theorem2_sweep(const std::vector<SpectrumSelection>& spectra,
                                        const std::vector<double>& p_list, long samples,
                                        std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("need at least one sample");
  std::vector<Theorem2Row> rows;
  for (const SpectrumSelection& spectrum : spectra) {
    const int n = spectrum.n;

    // One table per p; samples are shared across all p for this n.
    std::vector<NodeBasis> tables;
    tables.reserve(p_list.size());
    for (double p : p_list) {
      if (p == kInf) {
        NormBody probe = NormBody::induced(spectrum, kInf);
        tables.push_back(*std::get<InducedBody>(probe.kind()).table);
      } else {
        tables.push_back(NodeBasis::build(spectrum, *default_rule(spectrum, p)));
      }
    }

    std::vector<double> sum(p_list.size(), 0.0), sumsq(p_list.size(), 0.0);
    for (long chunk = 0, done = 0; done < samples; ++chunk) {
      Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(chunk));
      const long take = std::min(kChunk, samples - done);
      Eigen::MatrixXd dirs(n, take);
      for (long i = 0; i < take; ++i) dirs.col(i) = rng.sphere_vector(n);
      for (std::size_t k = 0; k < p_list.size(); ++k) {
        const double p = p_list[k];
        const Eigen::MatrixXd vals = tables[k].values() * dirs;  // nodes x take
        for (long i = 0; i < take; ++i) {
          double v;
          if (p == kInf) {
            v = vals.col(i).cwiseAbs().maxCoeff();
          } else if (p == 2.0) {
            v = std::sqrt(tables[k].weights().dot(vals.col(i).cwiseAbs2()));
          } else {
            double acc = 0.0;
            for (long r = 0; r < vals.rows(); ++r)
              acc += tables[k].weights()[r] * std::pow(std::abs(vals(r, i)), p);
            v = std::pow(acc, 1.0 / p);
          }
          sum[k] += v;
          sumsq[k] += v * v;
        }
      }
      done += take;
    }

    for (std::size_t k = 0; k < p_list.size(); ++k) {
      Theorem2Row row;
      row.n = n;
      row.p = p_list[k];
      row.mean = sum[k] / static_cast<double>(samples);
      const double var =
          std::max(0.0, sumsq[k] / static_cast<double>(samples) - row.mean * row.mean);
      row.stderr_ = std::sqrt(var / static_cast<double>(samples));
      row.normalized = (p_list[k] == kInf) ? row.mean / std::sqrt(std::log(n))
                                           : row.mean / std::sqrt(p_list[k]);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace flatpoly
