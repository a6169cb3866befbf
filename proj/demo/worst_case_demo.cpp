// Prints the extremal constant for a few alphabet sizes and compares the
// worst-case distribution's exact, poissonized and simulated variance.
#include <cstdio>

#include "missmass/missmass.hpp"

int main() {
  using namespace missmass;
  const std::uint64_t n = 200;
  std::printf("c* = %.12f\n\n", find_cstar());
  std::printf("%8s %10s %10s %14s %12s %12s %12s\n", "m", "alpha", "w", "regime", "n*exact",
              "n*poisson", "n*simulated");
  for (const AlphabetBound m : {AlphabetBound::finite(20), AlphabetBound::finite(60),
                                AlphabetBound::finite(80), AlphabetBound::infinite()}) {
    const auto sol = solve_alpha(AlphabetRatio::of(m, n));
    const auto dist = worst_case_distribution(n, m).to_distribution();
    const auto sim = estimate_variance(dist, n, 20000, 7);
    std::printf("%8s %10.6f %10.6f %14s %12.6f %12.6f %12.6f\n",
                m.is_infinite() ? "inf" : std::to_string(m.value()).c_str(), sol.alpha, sol.w,
                std::string(to_string(sol.regime)).c_str(), n * exact_variance(dist, n).value,
                n * poissonized_variance(dist, n).value, n * sim.variance);
  }
}
