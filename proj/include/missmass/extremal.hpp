#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dist.hpp"
#include "error.hpp"
#include "roots.hpp"

namespace missmass {

/// f(c) = 2 - 2e^c + c(e^c - 2). Its root in (2, 3) is the stationary point of
/// c^2 (e^{-c} - e^{-2c}), i.e. where the unconstrained optimum sits.
inline double cstar_equation(double c) noexcept {
  const double ec = std::exp(c);
  return 2.0 - 2.0 * ec + c * (ec - 2.0);
}

/// Root of cstar_equation on [2, 3] to 1e-12; throws NO_BRACKET if the signs
/// at the endpoints do not differ.
inline double find_cstar() {
  return numeric::find_root_bracketed(cstar_equation, 2.0, 3.0, 1e-12).root;
}

namespace detail {
inline double cached_cstar() {
  static const double value = find_cstar();
  return value;
}
}  // namespace detail

/// alpha(w, c) = -w^2 c^2 e^{-2c} + w c^2 e^{-c}, for w, c >= 0.
inline double objective_alpha(double w, double c) noexcept {
  const double c2 = c * c;
  return -w * w * c2 * std::exp(-2.0 * c) + w * c2 * std::exp(-c);
}

/// Alphabet ratio b = m / n, possibly infinite.
class AlphabetRatio {
 public:
  static AlphabetRatio finite(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw Error(ErrorCode::kInvalidB, "alphabet ratio must be positive, got " + std::to_string(b));
    }
    return AlphabetRatio(b);
  }
  static constexpr AlphabetRatio infinite() noexcept { return AlphabetRatio(); }

  static AlphabetRatio of(const AlphabetBound& m, std::uint64_t n) {
    if (m.is_infinite()) return infinite();
    return finite(static_cast<double>(m.value()) / static_cast<double>(n));
  }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  double value() const { return value_.value(); }

 private:
  constexpr AlphabetRatio() = default;
  explicit constexpr AlphabetRatio(double b) : value_(b) {}

  std::optional<double> value_;
};

/// UNIFORM is the w = 1 branch (b >= 1/c*); UNIFORM_DIRAC is the w = bc branch.
enum class Regime { kUniform, kUniformDirac };

inline constexpr std::string_view to_string(Regime r) noexcept {
  return r == Regime::kUniform ? "UNIFORM" : "UNIFORM_DIRAC";
}

struct ExtremalSolution {
  double alpha = 0.0;
  double w = 0.0;
  double c = 0.0;
  Regime regime = Regime::kUniform;
  AlphabetRatio b = AlphabetRatio::infinite();
};

/// Number of points in the coarse scan preceding golden-section refinement.
inline constexpr std::size_t kAlphaScanPoints = 2000;

/// Beyond this c the constrained objective is below 1e-18 and is not scanned.
inline constexpr double kAlphaScanCap = 60.0;

/// g_b(c) = alpha(bc, c) = -b^2 c^4 e^{-2c} + b c^3 e^{-c}.
inline double constrained_objective(double b, double c) noexcept {
  return objective_alpha(b * c, c);
}

/*
  Optimal value of max alpha(w, c) s.t. 0 <= w <= 1, w <= bc.

  The optimum lies on the boundary, so the 2-D program splits into the
  w = 1 branch (value alpha(1, c*) whenever c* is feasible, i.e. b >= 1/c*)
  and the w = bc branch, a 1-D maximization over c in (0, 1/b]. The latter
  is not known to be unimodal, so it is scanned on a grid first and the best
  cell is refined by golden section.
*/
inline ExtremalSolution solve_alpha(const AlphabetRatio& b) {
  const double cstar = detail::cached_cstar();
  const ExtremalSolution uniform_solution{objective_alpha(1.0, cstar), 1.0, cstar,
                                          Regime::kUniform, b};
  if (b.is_infinite() || b.value() >= 1.0 / cstar) return uniform_solution;

  const double ratio = b.value();
  const double c_max = 1.0 / ratio;
  const double scan_hi = std::min(c_max, kAlphaScanCap);
  const auto g = [ratio](double c) { return constrained_objective(ratio, c); };

  std::size_t best = 0;
  double best_value = -1.0;
  const auto grid = [&](std::size_t i) {
    return scan_hi * static_cast<double>(i + 1) / static_cast<double>(kAlphaScanPoints);
  };
  for (std::size_t i = 0; i < kAlphaScanPoints; ++i) {
    const double v = g(grid(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = best == 0 ? 0.0 : grid(best - 1);
  const double hi = best + 1 == kAlphaScanPoints ? scan_hi : grid(best + 1);
  auto refined = numeric::golden_section_max(g, lo, hi, 1e-10);

  double c = refined.argmax;
  double value = refined.value;
  if (best_value > value) {
    c = grid(best);
    value = best_value;
  }
  // The feasible endpoint c = 1/b (w = 1) is often the optimum itself.
  if (const double at_end = g(c_max); at_end >= value) {
    c = c_max;
    value = at_end;
  }
  const double w = c == c_max ? 1.0 : std::min(1.0, ratio * c);
  return {value, w, c, Regime::kUniformDirac, b};
}

/// Uniform part: atom_count atoms of atom_mass; plus one Dirac atom of dirac_mass.
struct WorstCaseSpec {
  std::uint64_t n = 0;
  std::uint64_t atom_count = 0;
  double atom_mass = 0.0;
  double dirac_mass = 0.0;

  DiscreteDistribution to_distribution() const {
    return uniform_dirac(static_cast<std::size_t>(atom_count), atom_mass, dirac_mass);
  }
};

/*
  Uniform+Dirac distribution attaining the extremal variance for sample size
  n and alphabet bound m. From the continuous optimum (w, c): atom mass c/n,
  fractional count k = w n / c, rounded up unless that overshoots total mass
  1, and capped at m - 1 to leave a slot for the Dirac atom.
*/
inline WorstCaseSpec worst_case_distribution(std::uint64_t n, const AlphabetBound& m) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample size n must be >= 1");
  if (!m.is_infinite() && m.value() < 2) {
    throw Error(ErrorCode::kInvalidAlphabet, "worst-case construction needs m >= 2");
  }
  const ExtremalSolution sol = solve_alpha(AlphabetRatio::of(m, n));
  // For n < c the optimal atom would exceed mass 1; a point mass is the only option.
  const double atom_mass = std::min(1.0, sol.c / static_cast<double>(n));
  const double k = sol.w / atom_mass;

  double count = std::ceil(k);
  if (count * atom_mass > 1.0) count = std::floor(k);
  count = std::max(count, 1.0);
  std::uint64_t atom_count = static_cast<std::uint64_t>(count);
  if (!m.is_infinite()) atom_count = std::min(atom_count, m.value() - 1);

  double dirac = 1.0 - static_cast<double>(atom_count) * atom_mass;
  if (dirac < kDiracOmitThreshold) dirac = 0.0;
  return {n, atom_count, atom_mass, dirac};
}

}  // namespace missmass
