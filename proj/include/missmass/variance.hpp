#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dist.hpp"
#include "error.hpp"
#include "occupancy.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace missmass {

/// Largest alphabet accepted by exact_variance (its cost is quadratic).
inline constexpr std::size_t kExactVarianceMaxAtoms = 20000;

enum class VarianceMethod { kExact, kThm1, kPoissonized };

inline constexpr std::string_view to_string(VarianceMethod m) noexcept {
  switch (m) {
    case VarianceMethod::kExact: return "EXACT";
    case VarianceMethod::kThm1: return "THM1";
    case VarianceMethod::kPoissonized: return "POISSONIZED";
  }
  return "UNKNOWN";
}

struct VarianceEstimate {
  double value = 0.0;
  VarianceMethod method = VarianceMethod::kExact;
  std::uint64_t n = 0;
};

namespace detail {

inline void require_sample_size(std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample size n must be >= 1");
}

// Masses in ascending order. Summing in a canonical order makes every
// variance routine exactly invariant under permutations of the input.
inline std::vector<double> canonical_order(const DiscreteDistribution& dist) {
  std::vector<double> p(dist.begin(), dist.end());
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace detail

/*
  Exact variance of the missing mass M0 = sum_s p_s 1{f_s = 0} under n IID
  draws:

      Var[M0] = sum_s p_s^2 Var[xi_s] + sum_{s != t} p_s p_t Cov[xi_s, xi_t]

  with Var[xi_s] = (1-p_s)^n - (1-p_s)^{2n} and the covariance evaluated by
  occupancy::miss_covariance. Each row s of the pair sum is accumulated
  separately and the rows are then reduced in index order, so the result
  does not depend on `workers`.
*/
inline VarianceEstimate exact_variance(const DiscreteDistribution& dist, std::uint64_t n,
                                       unsigned workers = 1) {
  detail::require_sample_size(n);
  const std::size_t m = dist.support_size();
  if (m > kExactVarianceMaxAtoms) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(m) + " atoms exceeds the exact-variance limit of " +
                    std::to_string(kExactVarianceMaxAtoms) + "; use an approximation");
  }

  const std::vector<double> p = detail::canonical_order(dist);
  std::vector<double> rows(m, 0.0);
  parallel_for(m, workers, [&](std::size_t s) {
    const double ps = p[s];
    if (ps <= 0.0) return;
    const double miss = occupancy::miss_prob(ps, n);
    CompensatedSum<double> row(ps * ps * miss * (1.0 - miss));
    for (std::size_t t = s + 1; t < m; ++t) {
      if (p[t] <= 0.0) continue;
      row += 2.0 * ps * p[t] * occupancy::miss_covariance(ps, p[t], n);
    }
    rows[s] = row.value();
  });
  const double total = compensated_sum(rows);
  return {std::max(0.0, total), VarianceMethod::kExact, n};
}

/// -n (sum p^2 (1-p)^n)^2 + n sum p^3 (1-p)^n. Not clamped; may be negative.
inline VarianceEstimate approx_variance_thm1(const DiscreteDistribution& dist, std::uint64_t n) {
  detail::require_sample_size(n);
  CompensatedSum<double> s2, s3;
  for (const double p : detail::canonical_order(dist)) {
    s2 += occupancy::binomial_term(p, 2, n);
    s3 += occupancy::binomial_term(p, 3, n);
  }
  const double nd = static_cast<double>(n);
  const double a = s2.value();
  return {-nd * a * a + nd * s3.value(), VarianceMethod::kThm1, n};
}

/// -n (sum p^2 e^{-np})^2 + n sum p^3 e^{-np}. Not clamped; may be negative.
inline VarianceEstimate poissonized_variance(const DiscreteDistribution& dist, std::uint64_t n) {
  detail::require_sample_size(n);
  CompensatedSum<double> s2, s3;
  for (const double p : detail::canonical_order(dist)) {
    s2 += occupancy::poisson_term(p, 2, n);
    s3 += occupancy::poisson_term(p, 3, n);
  }
  const double nd = static_cast<double>(n);
  const double a = s2.value();
  return {-nd * a * a + nd * s3.value(), VarianceMethod::kPoissonized, n};
}

/// E[M0] = sum_s p_s (1 - p_s)^n.
inline double expected_missing_mass(const DiscreteDistribution& dist, std::uint64_t n) {
  detail::require_sample_size(n);
  CompensatedSum<double> acc;
  for (const double p : detail::canonical_order(dist)) acc += occupancy::binomial_term(p, 1, n);
  return acc.value();
}

inline VarianceEstimate compute_variance(const DiscreteDistribution& dist, std::uint64_t n,
                                         VarianceMethod method, unsigned workers = 1) {
  switch (method) {
    case VarianceMethod::kExact: return exact_variance(dist, n, workers);
    case VarianceMethod::kThm1: return approx_variance_thm1(dist, n);
    case VarianceMethod::kPoissonized: return poissonized_variance(dist, n);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown variance method");
}

}  // namespace missmass
