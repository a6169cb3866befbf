#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "error.hpp"

namespace missmass::numeric {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/*
  Safeguarded secant/bisection on a sign-changing bracket [lo, hi].
  A secant step is taken when it lands strictly inside the current bracket,
  otherwise the midpoint is used; the bracket always shrinks, so the method
  keeps bisection's convergence guarantee. Stops when the bracket is below
  `tol` or the function value is exactly zero.
*/
template <typename F>
RootResult find_root_bracketed(F&& f, double lo, double hi, double tol = 1e-12,
                               std::size_t max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo * fhi < 0.0)) {
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    throw Error(ErrorCode::kNoBracket, "function does not change sign on the bracket");
  }
  double best = lo, fbest = flo;
  std::size_t it = 0;
  bool last_was_secant = false;
  for (; it < max_iter && (hi - lo) > tol; ++it) {
    double x = lo - flo * (hi - lo) / (fhi - flo);
    // Alternate with bisection so one-sided secant stalls cannot occur.
    if (last_was_secant || !(x > lo && x < hi)) {
      x = 0.5 * (lo + hi);
      last_was_secant = false;
    } else {
      last_was_secant = true;
    }
    const double fx = f(x);
    if (std::abs(fx) <= std::abs(fbest)) {
      best = x;
      fbest = fx;
    }
    if (fx == 0.0) break;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  if (std::abs(flo) < std::abs(fbest)) best = lo, fbest = flo;
  if (std::abs(fhi) < std::abs(fbest)) best = hi, fbest = fhi;
  return {best, fbest, it};
}

struct MaxResult {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <typename F>
MaxResult golden_section_max(F&& f, double lo, double hi, double tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while ((hi - lo) > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace missmass::numeric
