#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>

#include "dist.hpp"
#include "error.hpp"
#include "occupancy.hpp"
#include "roots.hpp"
#include "summation.hpp"
#include "variance.hpp"

namespace missmass {

/// Sub-gamma variance factor v = sum p^2 (1-p)^n + n^{-1} sum p (1-p)^n.
inline double subgamma_v(const DiscreteDistribution& dist, std::uint64_t n) {
  detail::require_sample_size(n);
  CompensatedSum<double> quad, lin;
  for (const double p : detail::canonical_order(dist)) {
    quad += occupancy::binomial_term(p, 2, n);
    lin += occupancy::binomial_term(p, 1, n);
  }
  return quad.value() + lin.value() / static_cast<double>(n);
}

/// sum p^2 ((1-p)^n - (1-p)^{2n}): the variance term obtained when the
/// indicators are treated as independent (covariances dropped).
inline double iid_majorization_v(const DiscreteDistribution& dist, std::uint64_t n) {
  detail::require_sample_size(n);
  CompensatedSum<double> acc;
  for (const double p : detail::canonical_order(dist)) {
    if (p <= 0.0) continue;
    const double miss = occupancy::miss_prob(p, n);
    acc += p * p * miss * (1.0 - miss);
  }
  return acc.value();
}

enum class GapMode { kExact, kPoissonized };

inline constexpr std::string_view to_string(GapMode m) noexcept {
  return m == GapMode::kExact ? "EXACT" : "POISSONIZED";
}

struct GapReport {
  std::uint64_t n = 0;
  GapMode mode = GapMode::kExact;
  double true_variance = 0.0;
  double subgamma_v = 0.0;
  double iid_major_v = 0.0;
  double gap_subgamma = 0.0;
  double gap_iid = 0.0;
};

/// Throws TOO_LARGE in EXACT mode for alphabets beyond kExactVarianceMaxAtoms.
inline GapReport gap_report(const DiscreteDistribution& dist, std::uint64_t n, GapMode mode,
                            unsigned workers = 1) {
  GapReport r;
  r.n = n;
  r.mode = mode;
  r.true_variance = mode == GapMode::kExact ? exact_variance(dist, n, workers).value
                                            : poissonized_variance(dist, n).value;
  r.subgamma_v = subgamma_v(dist, n);
  r.iid_major_v = iid_majorization_v(dist, n);
  r.gap_subgamma = r.subgamma_v - r.true_variance;
  r.gap_iid = r.iid_major_v - r.true_variance;
  return r;
}

struct SubgammaMaximum {
  double scaled_v = 0.0;  // n * subgamma_v at the maximizer
  std::uint64_t atom_count = 0;
  double atom_mass = 0.0;
  double dirac_mass = 0.0;
};

/*
  Best-effort maximization of n * subgamma_v over the Uniform+Dirac family
  {k atoms of mass p, one atom of mass 1 - kp}. For each k up to max_atoms the
  atom mass is scanned on a grid over (0, 1/k] and refined by golden section.
  Only a diagnostic: no closed form for this maximum is known to us.
*/
inline SubgammaMaximum maximize_subgamma_uniform_dirac(std::uint64_t n,
                                                       std::uint64_t max_atoms) {
  detail::require_sample_size(n);
  const double nd = static_cast<double>(n);
  const auto scaled = [n, nd](double k, double p) {
    const double dirac = std::max(0.0, 1.0 - k * p);
    const auto term = [n, nd](double q) {
      return nd * occupancy::binomial_term(q, 2, n) + occupancy::binomial_term(q, 1, n);
    };
    return k * term(p) + term(dirac);
  };
  SubgammaMaximum best;
  best.scaled_v = -1.0;
  constexpr int kGrid = 200;
  for (std::uint64_t k = 1; k <= max_atoms; ++k) {
    const double kd = static_cast<double>(k);
    const double hi = 1.0 / kd;
    int arg = 1;
    double val = -1.0;
    for (int i = 1; i <= kGrid; ++i) {
      const double v = scaled(kd, hi * i / kGrid);
      if (v > val) val = v, arg = i;
    }
    const auto f = [&](double p) { return scaled(kd, p); };
    const auto refined = numeric::golden_section_max(f, hi * (arg - 1) / kGrid,
                                                     hi * std::min(arg + 1, kGrid) / kGrid, 1e-14);
    double p = hi * arg / kGrid;
    if (refined.value > val) val = refined.value, p = refined.argmax;
    if (val > best.scaled_v) {
      best = {val, k, p, std::max(0.0, 1.0 - kd * p)};
    }
  }
  return best;
}

}  // namespace missmass
