#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dist.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace missmass {

/// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for replication `trial`; a pure function of (master, trial).
inline constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return mix64(master ^ mix64(trial));
}

/// Draws IID symbols by inverse CDF (binary search over cumulative masses)
/// and reports the mass of the symbols never drawn.
class MissingMassSampler {
 public:
  explicit MissingMassSampler(const DiscreteDistribution& dist)
      : probs_(dist.begin(), dist.end()), cumulative_(probs_.size()) {
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      acc += probs_[i];
      cumulative_[i] = acc.value();
    }
  }

  std::size_t draw(std::mt19937_64& rng) const {
    // 53 random bits -> [0, 1), rescaled so rounding in the total cannot
    // push u past the last bucket.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

  /// `seen` is scratch space, resized and cleared here.
  double sample(std::uint64_t n, std::uint64_t seed, std::vector<char>& seen) const {
    seen.assign(probs_.size(), 0);
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < n; ++i) seen[draw(rng)] = 1;
    CompensatedSum<double> missing;
    for (std::size_t s = 0; s < probs_.size(); ++s) {
      if (!seen[s]) missing += probs_[s];
    }
    return std::clamp(missing.value(), 0.0, 1.0);
  }

 private:
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

/// One realization of M0 for a sample of size n. Deterministic in (dist, n, seed).
inline double sample_missing_mass(const DiscreteDistribution& dist, std::uint64_t n,
                                  std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample size n must be >= 1");
  std::vector<char> seen;
  return MissingMassSampler(dist).sample(n, seed, seen);
}

struct SimulationEstimate {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  std::uint64_t seed = 0;
};

/// Mean, unbiased variance and their standard errors for a fixed-order sample.
/// The variance SE uses Var[s^2] = (mu4 - (R-3)/(R-1) sigma^4) / R.
inline SimulationEstimate summarize_samples(std::span<const double> x, std::uint64_t seed) {
  const std::size_t r = x.size();
  if (r < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 samples");
  const double rd = static_cast<double>(r);

  CompensatedSum<double> sum;
  for (const double v : x) sum += v;
  const double mean = sum.value() / rd;

  CompensatedSum<double> m2, m4;
  for (const double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  const double variance = m2.value() / (rd - 1.0);
  const double sigma2 = m2.value() / rd;
  const double mu4 = m4.value() / rd;
  const double var_of_var = (mu4 - (rd - 3.0) / (rd - 1.0) * sigma2 * sigma2) / rd;

  SimulationEstimate est;
  est.trials = r;
  est.mean = std::clamp(mean, 0.0, 1.0);
  est.variance = std::max(0.0, variance);
  est.se_mean = std::sqrt(est.variance / rd);
  est.se_variance = std::sqrt(std::max(0.0, var_of_var));
  est.seed = seed;
  return est;
}

/*
  Monte-Carlo estimate of E[M0] and Var[M0] from `trials` replications.
  Replication i uses trial_seed(seed, i), and results are stored by index and
  reduced in index order, so the estimate is bit-identical for any `workers`.
*/
inline SimulationEstimate estimate_variance(const DiscreteDistribution& dist, std::uint64_t n,
                                            std::uint64_t trials, std::uint64_t seed,
                                            unsigned workers = 1) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample size n must be >= 1");
  if (trials < 2) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 2");
  const MissingMassSampler sampler(dist);
  std::vector<double> values(static_cast<std::size_t>(trials));

  workers = std::max(1u, workers);
  const std::size_t blocks = std::min<std::size_t>(workers, values.size());
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::vector<char> seen;
    const std::size_t lo = values.size() * b / blocks;
    const std::size_t hi = values.size() * (b + 1) / blocks;
    for (std::size_t i = lo; i < hi; ++i) values[i] = sampler.sample(n, trial_seed(seed, i), seen);
  });
  return summarize_samples(values, seed);
}

}  // namespace missmass
