#include <gtest/gtest.h>

#include <cmath>

#include "gbec/isotropic.hpp"
#include "gbec/oracle.hpp"

using namespace gbec;

TEST(Isotropic, CriticalTemperature) {
  const double tc = isotropic::critical_temperature();
  EXPECT_NEAR(tc, 0.94, 0.005);
  EXPECT_NEAR(tc * tc * tc * zeta3(), 1.0, 1e-15);
  // zeta(3)^{-1/3} to 1e-9 from the known value of zeta(3).
  EXPECT_NEAR(tc, 0.9404989703, 1e-9);
}

TEST(Isotropic, CondensateFraction) {
  EXPECT_EQ(isotropic::condensate_fraction(0.0), 1.0);
  EXPECT_EQ(isotropic::condensate_fraction(1.0), 0.0);
  EXPECT_EQ(isotropic::condensate_fraction(1.7), 0.0);
  EXPECT_DOUBLE_EQ(isotropic::condensate_fraction(0.5), 0.875);
  EXPECT_THROW(isotropic::condensate_fraction(-0.1), DomainError);
}

TEST(Isotropic, AlphaAboveTc) {
  EXPECT_EQ(isotropic::alpha_above_tc(1.0), 0.0);
  const double a = isotropic::alpha_above_tc(2.0);
  EXPECT_NEAR(bose_fn(3.0, a) / (zeta3() / 8.0), 1.0, 1e-10);
  EXPECT_THROW(isotropic::alpha_above_tc(0.9), NoSolution);
  // Classical limit: alpha grows without bound and F_3 -> e^{-alpha}.
  double prev = 0.0;
  for (double t : {2.0, 5.0, 20.0, 100.0}) {
    const double alpha = isotropic::alpha_above_tc(t);
    EXPECT_GT(alpha, prev);
    prev = alpha;
  }
  EXPECT_NEAR(std::exp(-prev) / (zeta3() / 1e6), 1.0, 1e-5);
}

TEST(Isotropic, ExcitedOccupationScaling) {
  const double a = isotropic::excited_occupation(1, 1e6, 0.5);
  const double b = isotropic::excited_occupation(1, 2e6, 0.5);
  EXPECT_NEAR(b / a, std::pow(2.0, -2.0 / 3.0), 1e-14);
  EXPECT_LT(isotropic::excited_occupation(1, 1e12, 0.5), 1e-7);
  EXPECT_THROW(isotropic::excited_occupation(0, 1e6, 0.5), DomainError);
}

TEST(Isotropic, ExcitedOccupationMatchesOracle) {
  oracle::SpectrumSpec spec{oracle::IsotropicSpectrum{}};
  const double n = 1e6, t = 0.5;
  const auto sol = oracle::solve_alpha_exact(spec, n, t);
  ASSERT_EQ(sol.occupations[1].qn[0], 1);
  const double exact = sol.occupations[1].per_state / n;
  EXPECT_NEAR(isotropic::excited_occupation(1, n, t) / exact, 1.0, 0.05);
}

TEST(Isotropic, OracleGroundPlusExcitedIsOne) {
  oracle::SpectrumSpec spec{oracle::IsotropicSpectrum{}};
  for (double t : {0.3, 0.6, 0.9}) {
    const auto sol = oracle::solve_alpha_exact(spec, 1e5, t);
    const double excited = oracle::band_fraction_exact(sol, [](const auto& q) { return q[0] >= 1; });
    EXPECT_NEAR(sol.f_g + excited, 1.0, 1e-3) << t;
  }
}

TEST(Isotropic, OracleGroundFractionApproachesLaw) {
  oracle::SpectrumSpec spec{oracle::IsotropicSpectrum{}};
  for (double t : {0.5, 0.8}) {
    double prev_gap = 1.0;
    for (double n : {1e3, 1e4, 1e5}) {
      const double gap = std::fabs(oracle::solve_alpha_exact(spec, n, t).f_g - isotropic::condensate_fraction(t));
      EXPECT_LT(gap, prev_gap) << "t=" << t << " N=" << n;
      prev_gap = gap;
    }
  }
}
