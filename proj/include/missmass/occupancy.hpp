#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

// Stable evaluation of the occupancy-type terms p^k (1-p)^n and p^k e^{-np}.
// Everything goes through exp/log so that large n neither underflows early
// nor accumulates the rounding of repeated multiplication.

namespace missmass::occupancy {

/// n * ln(1 - p), with log1p for accuracy near p = 0. Returns -inf at p >= 1.
inline double log_miss(double p, std::uint64_t n) noexcept {
  if (p >= 1.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(n) * std::log1p(-p);
}

/// (1 - p)^n.
inline double miss_prob(double p, std::uint64_t n) noexcept {
  return std::exp(log_miss(p, n));
}

/// p^k (1 - p)^n; zero for p = 0 (k >= 1) and for p = 1.
inline double binomial_term(double p, int k, std::uint64_t n) noexcept {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return std::exp(k * std::log(p) + log_miss(p, n));
}

/// p^k e^{-np}, computed as exp(k ln p - n p).
inline double poisson_term(double p, int k, std::uint64_t n) noexcept {
  if (p <= 0.0) return 0.0;
  return std::exp(k * std::log(p) - static_cast<double>(n) * p);
}

/*
  Cov[xi_s, xi_t] = (1 - p - q)^n - (1 - p)^n (1 - q)^n for the indicators
  that s and t are both unobserved.

  Factoring out (1-p)^n (1-q)^n leaves
      expm1(n * log1p(-pq / ((1-p)(1-q))))
  which avoids the cancellation of two nearly equal powers.
*/
inline double miss_covariance(double p, double q, std::uint64_t n) noexcept {
  if (p <= 0.0 || q <= 0.0 || p >= 1.0 || q >= 1.0) return 0.0;
  const double base = std::exp(log_miss(p, n) + log_miss(q, n));
  if (base == 0.0) return 0.0;
  // ratio reaches 1 exactly when p + q = 1 (both symbols cannot be missing).
  const double ratio = std::min(1.0, (p * q) / ((1.0 - p) * (1.0 - q)));
  return base * std::expm1(static_cast<double>(n) * std::log1p(-ratio));
}

}  // namespace missmass::occupancy
