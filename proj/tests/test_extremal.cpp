#include <gtest/gtest.h>

#include <cmath>

#include "missmass/extremal.hpp"
#include "missmass/variance.hpp"
#include "oracles.hpp"

using namespace missmass;

TEST(Cstar, RootAndBracket) {
  const double c = find_cstar();
  EXPECT_NEAR(c, 2.26281, 1e-4);
  EXPECT_GT(c, 2.0);
  EXPECT_LT(c, 3.0);
  EXPECT_LT(std::abs(cstar_equation(c)), 1e-10);
  EXPECT_NEAR(cstar_equation(2.0), -2.0, 1e-12);
  EXPECT_NEAR(cstar_equation(3.0), std::exp(3.0) - 4.0, 1e-12);
  EXPECT_NEAR(cstar_equation(3.0), 16.0855, 1e-4);
}

TEST(Cstar, IsStationaryPointOfUniformObjective) {
  const double c = find_cstar();
  const double h = 1e-5;
  const double slope = (objective_alpha(1.0, c + h) - objective_alpha(1.0, c - h)) / (2 * h);
  EXPECT_NEAR(slope, 0.0, 1e-9);
}

TEST(RootFinder, NoBracket) {
  try {
    numeric::find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoBracket);
  }
}

TEST(GoldenSection, FindsParabolaPeak) {
  const auto r = numeric::golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1);
  EXPECT_NEAR(r.argmax, 0.3, 1e-9);
}

TEST(ObjectiveAlpha, Examples) {
  EXPECT_EQ(objective_alpha(0.0, 3.7), 0.0);
  EXPECT_NEAR(objective_alpha(1.0, find_cstar()), 0.477, 1e-3);
  EXPECT_NEAR(objective_alpha(0.5, 1.0), -0.25 * std::exp(-2.0) + 0.5 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(objective_alpha(0.5, 1.0), 0.150106, 1e-6);
}

TEST(SolveAlpha, InfiniteAlphabet) {
  const auto s = solve_alpha(AlphabetRatio::infinite());
  EXPECT_NEAR(s.alpha, 0.477, 1e-3);
  EXPECT_EQ(s.w, 1.0);
  EXPECT_NEAR(s.c, 2.26281, 1e-3);
  EXPECT_EQ(s.regime, Regime::kUniform);
  EXPECT_NEAR(s.alpha, objective_alpha(s.w, s.c), 1e-12);
}

TEST(SolveAlpha, LargeRatioMatchesInfinite) {
  const auto inf = solve_alpha(AlphabetRatio::infinite());
  const auto one = solve_alpha(AlphabetRatio::finite(1.0));
  EXPECT_EQ(one.alpha, inf.alpha);
  EXPECT_EQ(one.w, inf.w);
  EXPECT_EQ(one.c, inf.c);
  EXPECT_EQ(one.regime, Regime::kUniform);
}

TEST(SolveAlpha, DiracRegimeAtPointTwo) {
  const auto s = solve_alpha(AlphabetRatio::finite(0.2));
  EXPECT_EQ(s.regime, Regime::kUniformDirac);
  EXPECT_NEAR(s.alpha, 0.2610, 1e-4);
  EXPECT_NEAR(s.c, 3.06, 0.01);
  EXPECT_NEAR(s.w, 0.61, 0.01);
  EXPECT_NEAR(s.w, 0.2 * s.c, 1e-12);
  // Frozen from a 10^5-point scan of c in (0, 5].
  EXPECT_NEAR(s.alpha, 0.26098089491961834, 1e-6);
}

TEST(SolveAlpha, InvalidRatio) {
  EXPECT_THROW(AlphabetRatio::finite(0.0), Error);
  EXPECT_THROW(AlphabetRatio::finite(-1.0), Error);
}

TEST(SolveAlpha, SolutionInvariants) {
  for (double b = 0.01; b < 3.0; b *= 1.17) {
    const auto s = solve_alpha(AlphabetRatio::finite(b));
    EXPECT_NEAR(s.alpha, objective_alpha(s.w, s.c), 1e-12);
    EXPECT_LE(s.w, b * s.c + 1e-12);
    EXPECT_LE(s.w, 1.0 + 1e-12);
    EXPECT_GT(s.c, 0.0);
    // Optimum on the boundary: w = 1 or w = bc.
    EXPECT_TRUE(std::abs(s.w - 1.0) < 1e-9 || std::abs(s.w - b * s.c) < 1e-9) << b;
    EXPECT_EQ(s.regime == Regime::kUniform, b >= 1.0 / find_cstar()) << b;
  }
}

TEST(SolveAlpha, MonotoneAndFlat) {
  const double cstar = find_cstar();
  const double flat = solve_alpha(AlphabetRatio::infinite()).alpha;
  double prev = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double b = 0.005 * i;
    const double a = solve_alpha(AlphabetRatio::finite(b)).alpha;
    EXPECT_GE(a, prev - 1e-12) << b;
    if (b >= 1.0 / cstar) {
      EXPECT_NEAR(a, flat, 1e-9);
    }
    prev = a;
  }
}

TEST(SolveAlpha, AgreesWithGridOracle) {
  for (const double b : {0.05, 0.1, 0.2, 0.3, 0.4, 0.44, 0.5, 1.0, 10.0}) {
    const double oracle_value = oracle::grid_max_alpha(b, false, 500);
    // The coarser 500-point grid is within 2e-4 of the optimum.
    EXPECT_NEAR(solve_alpha(AlphabetRatio::finite(b)).alpha, oracle_value, 2e-4) << b;
    EXPECT_GE(solve_alpha(AlphabetRatio::finite(b)).alpha, oracle_value - 1e-12) << b;
  }
}

TEST(WorstCase, InfiniteAlphabetOverflowRepair) {
  const auto w = worst_case_distribution(1000, AlphabetBound::infinite());
  EXPECT_NEAR(w.atom_mass, 0.00226281, 1e-8);
  EXPECT_EQ(w.atom_count, 441u);
  EXPECT_NEAR(w.dirac_mass, 0.002100, 1e-6);
  EXPECT_NEAR(w.atom_count * w.atom_mass + w.dirac_mass, 1.0, 1e-9);
}

TEST(WorstCase, DiracRegime) {
  const auto w = worst_case_distribution(100, AlphabetBound::finite(20));
  EXPECT_NEAR(w.atom_mass, 0.0306, 1e-4);
  EXPECT_EQ(w.atom_count, 19u);
  EXPECT_NEAR(w.dirac_mass, 0.418, 1e-3);
}

TEST(WorstCase, InvariantsAcrossInputs) {
  for (const std::uint64_t n : {1u, 2u, 3u, 10u, 57u, 100u, 1000u, 12345u}) {
    for (const std::uint64_t m : {2u, 3u, 5u, 20u, 44u, 45u, 100u, 5000u, 0u}) {
      const AlphabetBound bound = m == 0 ? AlphabetBound::infinite() : AlphabetBound::finite(m);
      const auto w = worst_case_distribution(n, bound);
      EXPECT_GE(w.atom_count, 1u);
      EXPECT_GE(w.atom_mass, 0.0);
      EXPECT_GE(w.dirac_mass, 0.0);
      EXPECT_NEAR(w.atom_count * w.atom_mass + w.dirac_mass, 1.0, 1e-9);
      if (m != 0) {
        EXPECT_LE(w.atom_count + (w.dirac_mass > 0 ? 1u : 0u), m);
      }
      const auto d = w.to_distribution();
      EXPECT_NEAR(compensated_sum(d), 1.0, 1e-9);
    }
  }
}

TEST(WorstCase, RejectsDegenerateAlphabet) {
  try {
    worst_case_distribution(100, AlphabetBound::finite(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidAlphabet);
  }
  EXPECT_THROW(worst_case_distribution(0, AlphabetBound::infinite()), Error);
}

TEST(WorstCase, PoissonizedVarianceApproachesAlpha) {
  for (const std::uint64_t n : {1000u, 10000u}) {
    for (const double b : {0.0, 0.2}) {
      const AlphabetBound m = b == 0.0 ? AlphabetBound::infinite()
                                       : AlphabetBound::finite(static_cast<std::uint64_t>(b * n));
      const double alpha = solve_alpha(AlphabetRatio::of(m, n)).alpha;
      const auto d = worst_case_distribution(n, m).to_distribution();
      EXPECT_NEAR(n * poissonized_variance(d, n).value, alpha, 0.02) << n << " " << b;
    }
  }
}

TEST(WorstCase, NoLargeAscentFromDiracShift) {
  for (const std::uint64_t n : {100u, 1000u}) {
    for (const std::uint64_t m : {0u, 20u, 200u}) {
      const AlphabetBound bound = m == 0 ? AlphabetBound::infinite() : AlphabetBound::finite(m);
      const auto w = worst_case_distribution(n, bound);
      if (w.dirac_mass <= 0.0) continue;
      const auto base = w.to_distribution();
      std::vector<double> moved(base.begin(), base.end());
      moved[0] += 0.1 * w.dirac_mass;
      moved.back() -= 0.1 * w.dirac_mass;
      const double before = poissonized_variance(base, n).value;
      const double after = poissonized_variance(from_probs(moved), n).value;
      EXPECT_LE(after - before, 1.0 / (double(n) * double(n))) << n << " " << m;
    }
  }
}
