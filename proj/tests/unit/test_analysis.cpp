#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracspde/analysis.hpp"
#include "fracspde/error.hpp"

using namespace fracspde;

namespace {

SimConfig small(const std::string& preset) {
  SimConfig c;
  c.lambda = 2.0;
  c.grid = Grid1D(1.0, 16);
  c.dt = 0.01;
  c.n_steps = 20;
  c.coefficients = make_preset(preset);
  return c;
}

}  // namespace

TEST(Exponents, BoundValues) {
  auto e = theoretical_exponents(2, 1);
  EXPECT_DOUBLE_EQ(e.alpha_max, 0.25);
  EXPECT_DOUBLE_EQ(e.beta_max, 0.5);
  e = theoretical_exponents(1.5, 1);
  EXPECT_NEAR(e.alpha_max, 1.0 / 6, 1e-15);
  EXPECT_NEAR(e.beta_max, 0.25, 1e-15);
  e = theoretical_exponents(2, 0.1);
  EXPECT_NEAR(e.alpha_max, 0.05, 1e-15);
  EXPECT_NEAR(e.beta_max, 0.1, 1e-15);
  EXPECT_THROW(theoretical_exponents(2.5, 1), std::invalid_argument);
  EXPECT_THROW(theoretical_exponents(1.5, 0), std::invalid_argument);
}

TEST(Exponents, LiteralFormulaOverParameterGrid) {
  for (int i = 1; i <= 20; ++i) {
    for (int k = 1; k <= 20; ++k) {
      const double lambda = 1.0 + 0.05 * i;
      const double rho = 0.05 * k;
      const auto e = theoretical_exponents(lambda, rho);
      const double a = rho / lambda < (lambda - 1) / (2 * lambda) ? rho / lambda : (lambda - 1) / (2 * lambda);
      const double b = rho < (lambda - 1) / 2 ? rho : (lambda - 1) / 2;
      EXPECT_EQ(e.alpha_max, a);
      EXPECT_EQ(e.beta_max, b);
    }
  }
}

TEST(Exponents, SpaceIsLambdaTimesTimeForRegularData) {
  for (double lambda : {1.1, 1.5, 2.0}) {
    for (double rho : {0.5, 0.75, 1.0}) {
      const auto e = theoretical_exponents(lambda, rho);
      EXPECT_NEAR(e.beta_max, lambda * e.alpha_max, 1e-15);
    }
  }
}

TEST(Exponents, RemarkValues) {
  EXPECT_DOUBLE_EQ(remark_exponents(2).alpha_max, 0.25);
  EXPECT_DOUBLE_EQ(remark_exponents(2).beta_max, 0.5);
  EXPECT_NEAR(remark_exponents(1.5).alpha_max, 1.0 / 6, 1e-15);
  EXPECT_NEAR(remark_exponents(1.5).beta_max, 0.25, 1e-15);
  EXPECT_LT(remark_exponents(1.0 + 1e-9).alpha_max, 1e-8);
  EXPECT_LT(remark_exponents(1.0 + 1e-9).beta_max, 1e-8);
}

TEST(Moments, DeterministicConstantSolution) {
  auto c = small("zero");
  c.initial = {InitialKind::constant, -1.5};
  const double ps[] = {1.0, 2.0, 3.5};
  const auto est = estimate_moments(c, ps, 0.1, 100, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(est[i].sup_over_grid, std::pow(1.5, ps[i]), 1e-12);
    for (double se : est[i].std_errors) EXPECT_NEAR(se, 0.0, 1e-12);
  }
}

TEST(Moments, StderrShrinksWithReplicates) {
  auto c = small("additive");
  const auto a = estimate_moments(c, 2.0, 0.2, 2000, 3);
  const auto b = estimate_moments(c, 2.0, 0.2, 4000, 3);
  double ra = 0, rb = 0;
  for (std::size_t j = 0; j < 16; ++j) {
    ra += a.std_errors[j];
    rb += b.std_errors[j];
  }
  EXPECT_NEAR(ra / rb, std::sqrt(2.0), 0.1 * std::sqrt(2.0));
}

TEST(Moments, MultiOrderMatchesSingleOrder) {
  auto c = small("affine");
  const double ps[] = {2.0, 4.0};
  const auto multi = estimate_moments(c, ps, 0.2, 64, 8);
  const auto single = estimate_moments(c, 4.0, 0.2, 64, 8);
  EXPECT_EQ(multi[1].values, single.values);
}

TEST(Moments, TranslationInvariance) {
  auto c = small("additive");
  c.grid = Grid1D(1.0, 32);
  c.initial = {InitialKind::smooth_cosine, 1.0};
  const auto a = estimate_moments(c, 2.0, 0.2, 2000, 5);
  c.initial.shift_cells = 5;
  const auto b = estimate_moments(c, 2.0, 0.2, 2000, 6);
  const double se = std::hypot(a.std_errors[a.argmax], b.std_errors[b.argmax]);
  EXPECT_LE(std::abs(a.sup_over_grid - b.sup_over_grid), 4 * se);
}

TEST(Moments, SolverFailureNamesReplicate) {
  auto c = small("zero");
  c.coefficients.b = [](double t, double, double) { return t > 0.05 ? NAN : 0.0; };
  c.coefficients.b_vanishes = false;
  try {
    estimate_moments(c, 2.0, 0.2, 10, 1);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("replicate 0"), std::string::npos);
  }
}

TEST(Moments, TimeMustBeOnTheMesh) {
  auto c = small("additive");
  EXPECT_THROW(estimate_moments(c, 2.0, 0.015, 10, 1), std::invalid_argument);
  EXPECT_THROW(estimate_moments(c, 2.0, 0.5, 10, 1), std::invalid_argument);
  EXPECT_THROW(estimate_moments(c, 0.5, 0.1, 10, 1), std::invalid_argument);
}

TEST(Increments, ZeroLagAndSmoothSpatialSlope) {
  auto c = small("zero");
  c.grid = Grid1D(1.0, 256);
  c.initial = {InitialKind::smooth_cosine, 1.0};
  const double dx = c.grid.dx();
  const std::vector<double> lags = {0.0, dx, 2 * dx};
  const auto t0 = increment_table(c, Direction::space, 2.0, lags, 4, 1);
  EXPECT_EQ(t0.moments[0], 0.0);
  const std::vector<double> fit_lags = {dx, 2 * dx, 4 * dx, 8 * dx, 16 * dx};
  const auto t = increment_table(c, Direction::space, 2.0, fit_lags, 4, 1);
  const auto fit = fit_holder_exponent(t);
  EXPECT_NEAR(fit.estimated_gamma, 1.0, 0.01);
  EXPECT_DOUBLE_EQ(fit.theoretical_bound, 0.5);
}

TEST(Increments, LagsMustBeMeshAlignedAndIncreasing) {
  auto c = small("additive");
  const std::vector<double> off = {0.015};
  EXPECT_THROW(increment_table(c, Direction::time, 2.0, off, 4, 1), std::invalid_argument);
  const std::vector<double> dec = {0.02, 0.01};
  EXPECT_THROW(increment_table(c, Direction::time, 2.0, dec, 4, 1), std::invalid_argument);
}

TEST(Increments, CarriesModelParameters) {
  auto c = small("additive");
  c.lambda = 1.5;
  c.initial = {InitialKind::hoelder_rough, 1.0, 0.2};
  const std::vector<double> lags = {0.01, 0.02};
  IncrementOptions opt;
  opt.base_time_lo = 0.0;
  const auto t = increment_table(c, Direction::time, 2.0, lags, 8, 2, opt);
  EXPECT_EQ(t.lambda, 1.5);
  EXPECT_EQ(t.rho, 0.2);
  EXPECT_EQ(t.n_replicates, 8u);
}

TEST(HolderFit, RecoversPlantedPowerLaw) {
  for (double p : {2.0, 4.0}) {
    IncrementTable t{Direction::space, p, 2.0, 1.0, {}, {}, {}, 1, 1};
    for (double lag : {0.01, 0.02, 0.04, 0.08, 0.16}) {
      t.lags.push_back(lag);
      t.moments.push_back(std::pow(lag, 0.5 * p));
    }
    const auto f = fit_holder_exponent(t);
    EXPECT_NEAR(f.estimated_gamma, 0.5, 1e-6);
    EXPECT_GT(f.std_error, 0.0);
    EXPECT_EQ(f.n_points, 5u);
  }
}

TEST(HolderFit, ValidatesTable) {
  IncrementTable t{Direction::time, 2.0, 2.0, 1.0, {0.01, 0.02, 0.04, 0.1}, {1, 2, 0, 4}, {}, 1, 1};
  EXPECT_THROW(fit_holder_exponent(t), std::invalid_argument);
  t.moments = {1, 2, 3, 4};
  EXPECT_NO_THROW(fit_holder_exponent(t));
  t.lags = {0.01, 0.02, 0.04, 0.08};
  EXPECT_THROW(fit_holder_exponent(t), std::invalid_argument);  // less than a decade
  t.lags = {0.01, 0.1, 1.0};
  t.moments = {1, 2, 3};
  EXPECT_THROW(fit_holder_exponent(t), std::invalid_argument);  // fewer than 4 lags
}
