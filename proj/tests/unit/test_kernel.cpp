#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracspde/error.hpp"
#include "fracspde/kernel.hpp"
#include "oracles.hpp"

using namespace fracspde;

namespace {
constexpr double kPi = std::numbers::pi;

double sup_error_vs_closed_form(double lambda, double t, const KernelSpec& spec) {
  const auto kv = kernel_values(spec, t);
  double e = 0;
  for (std::size_t j = 0; j < spec.grid.size(); ++j) {
    e = std::max(e, std::abs(kv.values[j] - kernel_closed_form(lambda, t, spec.grid.offset(j))));
  }
  return e;
}
}  // namespace

TEST(ClosedForm, KnownValues) {
  EXPECT_NEAR(kernel_closed_form(2, 4, 0), std::sqrt(kPi / 4), 1e-15);
  EXPECT_NEAR(kernel_closed_form(2, 4, 0), 0.8862269, 1e-7);
  EXPECT_DOUBLE_EQ(kernel_closed_form(1, 1, 0), 2.0);
  EXPECT_THROW(kernel_closed_form(1.5, 1, 0), std::invalid_argument);
}

TEST(ClosedForm, GaussianIntegratesToOne) {
  for (double t : {0.3, 1.0, 7.0}) {
    double s = 0;
    const double h = 1e-3 * std::sqrt(t);
    for (int i = -20000; i <= 20000; ++i) s += kernel_closed_form(2, t, i * h);
    EXPECT_NEAR(s * h, 1.0, 1e-10);
  }
}

TEST(ClosedForm, AgreesWithFourierQuadrature) {
  for (double x : {0.0, 0.1, 0.4}) {
    EXPECT_NEAR(oracle::stable_density(2, 1, x), kernel_closed_form(2, 1, x), 1e-10);
    EXPECT_NEAR(oracle::stable_density(1, 1, x), kernel_closed_form(1, 1, x), 1e-10);
  }
}

TEST(KernelValues, PeakValues) {
  KernelSpec s2{2.0, adequate_grid(2.0, 1, 1, 1e-10)};
  EXPECT_NEAR(kernel_values(s2, 1).values[0], 1.7724539, 1e-7);
  KernelSpec s1{1.0, adequate_grid(1.0, 1, 1, 1e-7)};
  EXPECT_NEAR(kernel_values(s1, 1).values[0], 2.0, 1e-6);
}

TEST(KernelValues, MassPositivityEvenness) {
  for (double lambda : {1.1, 1.5, 2.0}) {
    for (double t : {0.1, 1.0, 5.0}) {
      KernelSpec spec{lambda, adequate_grid(lambda, t, t, 1e-7)};
      const auto kv = kernel_values(spec, t);
      double mass = 0;
      for (double v : kv.values) mass += v;
      EXPECT_NEAR(mass * spec.grid.dx(), 1.0, 1e-6) << lambda << " " << t;
      EXPECT_GE(*std::min_element(kv.values.begin(), kv.values.end()), -1e-8);
      const std::size_t n = kv.values.size();
      for (std::size_t j = 1; j < n; ++j) ASSERT_EQ(kv.values[j], kv.values[n - j]);
    }
  }
}

TEST(KernelValues, MassHoldsEvenOnCoarseGrids) {
  // The zero mode is exactly 1, so mass is exact whatever the truncation.
  KernelSpec spec{1.3, Grid1D(16.0, 1024)};
  const auto kv = kernel_values(spec, 0.5);
  double mass = 0;
  for (double v : kv.values) mass += v;
  EXPECT_NEAR(mass * spec.grid.dx(), 1.0, 1e-12);
}

TEST(KernelValues, OracleEquivalence) {
  for (double t : {0.1, 1.0, 5.0}) {
    KernelSpec s2{2.0, adequate_grid(2.0, t, t, 1e-10)};
    EXPECT_LT(sup_error_vs_closed_form(2, t, s2), 1e-8);
    KernelSpec s1{1.0, adequate_grid(1.0, t, t, 1e-7)};
    EXPECT_LT(sup_error_vs_closed_form(1, t, s1), 1e-6);
  }
}

TEST(KernelValues, MatchesQuadratureForNonClassicalLambda) {
  for (double lambda : {1.2, 1.5}) {
    const double t = 2.0;
    KernelSpec spec{lambda, adequate_grid(lambda, t, t, 1e-8)};
    const auto kv = kernel_values(spec, t);
    for (std::size_t j : {std::size_t{0}, std::size_t{7}, std::size_t{40}, std::size_t{300}}) {
      EXPECT_NEAR(kv.values[j], oracle::stable_density(lambda, t, spec.grid.offset(j)), 1e-7);
    }
  }
}

TEST(KernelValues, RejectsBadTimeAndCoarseGrids) {
  KernelSpec spec{1.5, Grid1D(16.0, 1024)};
  EXPECT_THROW(kernel_values(spec, 0.0), std::invalid_argument);
  EXPECT_THROW(kernel_values(spec, -1.0), std::invalid_argument);
  try {
    kernel_values(spec, 100.0);
    FAIL();
  } catch (const ResolutionError& e) {
    EXPECT_NE(std::string(e.what()).find("half-width"), std::string::npos);
  }
  try {
    kernel_values(spec, 1e-4);
    FAIL();
  } catch (const ResolutionError& e) {
    EXPECT_NE(std::string(e.what()).find("grid size N"), std::string::npos);
  }
}

TEST(SelfSimilarity, Residuals) {
  KernelSpec a{1.7, adequate_grid(1.7, 1, 1, 1e-7)};
  EXPECT_LT(self_similarity_residual(a, 1.0), 1e-14);
  KernelSpec b{2.0, adequate_grid(2.0, 0.5, 1, 1e-10)};
  EXPECT_LT(self_similarity_residual(b, 0.5), 1e-6);
  KernelSpec c{1.5, adequate_grid(1.5, 1, 2, 1e-7)};
  EXPECT_LT(self_similarity_residual(c, 2.0), 1e-5);
}

TEST(SelfSimilarity, PeakScalesLikeTimePower) {
  const double lambda = 1.5;
  KernelSpec spec{lambda, adequate_grid(lambda, 0.25, 4, 1e-8)};
  const double g1 = kernel_values(spec, 1).values[0];
  for (double t : {0.25, 4.0}) {
    EXPECT_NEAR(kernel_values(spec, t).values[0] * std::pow(t, 1 / lambda), g1, 1e-6);
  }
}

TEST(Semigroup, Residuals) {
  KernelSpec a{2.0, adequate_grid(2.0, 0.5, 1, 1e-10)};
  EXPECT_LT(semigroup_residual(a, 0.5, 0.5), 1e-6);
  KernelSpec b{1.2, adequate_grid(1.2, 0.3, 1, 1e-7)};
  EXPECT_LT(semigroup_residual(b, 0.3, 0.7), 1e-5);
}

TEST(Semigroup, ConvolutionMatchesQuadratureOracle) {
  // Convolve on the grid, compare to an independent evaluation of G(1).
  KernelSpec spec{1.2, adequate_grid(1.2, 0.3, 1, 1e-8)};
  const auto g = kernel_values(spec, 1.0);
  for (std::size_t j : {std::size_t{0}, std::size_t{25}, std::size_t{200}}) {
    EXPECT_NEAR(g.values[j], oracle::stable_density(1.2, 1.0, spec.grid.offset(j)), 1e-6);
  }
}

TEST(Semigroup, SymbolLevelIdentity) {
  KernelSpec spec{1.4, Grid1D(8, 256)};
  const auto s = kernel_symbol(spec, 0.3), t = kernel_symbol(spec, 0.7), st = kernel_symbol(spec, 1.0);
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(s[k] * t[k], st[k], 1e-13 * st[k] + 1e-300);
}

TEST(DerivativeBound, GaussianConstantMatchesScan) {
  KernelSpec spec{2.0, adequate_grid(2.0, 0.5, 2, 1e-10)};
  const auto r = derivative_bound_check(spec, 0, 1.0);
  double ref = 0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = i * 1e-5;
    ref = std::max(ref, std::sqrt(kPi) * std::exp(-kPi * kPi * x * x) * (1 + x * x));
  }
  EXPECT_LE(r.constant, 2.0);
  EXPECT_NEAR(r.constant, ref, 1e-6);
  EXPECT_TRUE(r.pass);
}

TEST(DerivativeBound, OddDerivativeVanishesAtOrigin) {
  for (double lambda : {1.3, 2.0}) {
    KernelSpec spec{lambda, adequate_grid(lambda, 0.5, 2, 1e-8)};
    const auto d = kernel_derivative(spec, 1, 1.0);
    EXPECT_NEAR(d[0], 0.0, 1e-12);
  }
}

TEST(DerivativeBound, SecondDerivativeMatchesClosedForm) {
  KernelSpec spec{2.0, adequate_grid(2.0, 1, 1, 1e-10)};
  const auto d = kernel_derivative(spec, 2, 1.0);
  for (std::size_t j : {std::size_t{0}, std::size_t{10}, std::size_t{30}}) {
    const double x = spec.grid.offset(j);
    const double ref = std::sqrt(kPi) * std::exp(-kPi * kPi * x * x) * (4 * std::pow(kPi, 4) * x * x - 2 * kPi * kPi);
    EXPECT_NEAR(d[j], ref, 1e-8);
  }
}

TEST(DerivativeBound, StableAcrossTimeSweep) {
  for (double lambda : {1.5, 2.0}) {
    KernelSpec spec{lambda, adequate_grid(lambda, 0.25, 2, 1e-8)};
    for (int m = 0; m <= 2; ++m) {
      const auto r = derivative_bound_check(spec, m, 1.0);
      EXPECT_TRUE(r.pass) << lambda << " m=" << m;
      EXPECT_GT(r.constant, 0.0);
    }
  }
  KernelSpec spec{1.5, Grid1D(16, 1024)};
  EXPECT_THROW(derivative_bound_check(spec, 3, 1.0), std::invalid_argument);
}

TEST(L2Scaling, ConstantAndSlopes) {
  const std::vector<double> times = {0.05, 0.1, 0.2, 0.4, 0.8};
  for (double lambda : {1.25, 1.5, 2.0}) {
    KernelSpec spec{lambda, adequate_grid(lambda, 0.05, 0.8, 1e-6)};
    const auto r = l2_time_scaling(spec, times);
    EXPECT_NEAR(r.slope, -1 / lambda, 1e-3) << lambda;
    EXPECT_NEAR(r.constant, l2_constant(lambda), 1e-4 * l2_constant(lambda)) << lambda;
  }
  EXPECT_NEAR(l2_constant(2.0), std::sqrt(kPi / 2), 1e-14);
  EXPECT_NEAR(l2_constant(2.0), 1.2533141, 1e-7);
}

TEST(L2Scaling, ConstantMatchesQuadrature) {
  for (double lambda : {1.1, 1.5, 2.0}) EXPECT_NEAR(l2_constant(lambda), oracle::l2_integral(lambda), 1e-10);
}

TEST(L2Scaling, RejectsDegenerateTimes) {
  KernelSpec spec{2.0, Grid1D(16, 1024)};
  const std::vector<double> same = {0.5, 0.5, 0.5};
  EXPECT_THROW(l2_time_scaling(spec, same), std::invalid_argument);
  const std::vector<double> two = {0.5, 0.6};
  EXPECT_THROW(l2_time_scaling(spec, two), std::invalid_argument);
}

TEST(PowerIntegrability, Classification) {
  EXPECT_TRUE(power_integrability_exponent(1.5, 2).overall_finite);
  EXPECT_TRUE(power_integrability_exponent(2.0, 2).overall_finite);
  for (double lambda : {0.5, 1.1, 1.7, 2.0}) {
    const auto r = power_integrability_exponent(lambda, 1);
    EXPECT_EQ(r.time_exponent, 0.0);
    EXPECT_TRUE(r.overall_finite);
  }
  EXPECT_FALSE(power_integrability_exponent(1.5, 3).overall_finite);
  EXPECT_FALSE(power_integrability_exponent(1.5, 2.5).overall_finite);
  EXPECT_FALSE(power_integrability_exponent(1.0, 2).overall_finite);
  EXPECT_FALSE(power_integrability_exponent(0.8, 2).overall_finite);
  // Below the tail threshold 1/(1+lambda) the spatial integral diverges.
  EXPECT_FALSE(power_integrability_exponent(1.5, 0.3).space_finite);
  EXPECT_TRUE(power_integrability_exponent(1.5, 0.45).space_finite);
}

TEST(FractionalLaplacian, ConstantEigenfunctionLinearity) {
  Grid1D g(4.0, 128);
  KernelSpec spec{2.0, g};
  std::vector<double> c(128, 3.0), f(128), h(128), mix(128);
  for (double v : apply_fractional_laplacian(spec, c)) EXPECT_NEAR(v, 0.0, 1e-13);
  for (std::size_t j = 0; j < 128; ++j) {
    f[j] = std::cos(2 * kPi * g.position(j) / g.length());
    h[j] = std::sin(6 * kPi * g.position(j) / g.length()) + 0.3 * std::cos(10 * kPi * g.position(j) / g.length());
    mix[j] = 2.0 * f[j] - 0.7 * h[j];
  }
  const auto lf = apply_fractional_laplacian(spec, f);
  const double eig = -std::pow(1.0 / g.length(), 2.0);
  for (std::size_t j = 0; j < 128; ++j) EXPECT_NEAR(lf[j], eig * f[j], 1e-14);
  KernelSpec frac{1.3, g};
  const auto a = apply_fractional_laplacian(frac, f), b = apply_fractional_laplacian(frac, h),
             m = apply_fractional_laplacian(frac, mix);
  for (std::size_t j = 0; j < 128; ++j) EXPECT_NEAR(m[j], 2.0 * a[j] - 0.7 * b[j], 1e-13);
}

TEST(FractionalLaplacian, MatchesSecondDifferenceAtLambdaTwo) {
  // The symbol -xi^2 is the Laplacian divided by 4 pi^2.
  const double omega = 2 * kPi * 1.5;
  std::vector<double> errs;
  for (std::size_t n : {64u, 128u, 256u}) {
    Grid1D g(1.0, n);
    KernelSpec spec{2.0, g};
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = std::cos(omega * g.position(j)) + 0.5 * std::sin(2 * kPi * g.position(j));
    const auto lf = apply_fractional_laplacian(spec, f);
    double err = 0;
    const double dx = g.dx();
    for (std::size_t j = 0; j < n; ++j) {
      const double fd = (f[(j + 1) % n] - 2 * f[j] + f[(j + n - 1) % n]) / (dx * dx) / (4 * kPi * kPi);
      err = std::max(err, std::abs(fd - lf[j]));
    }
    EXPECT_LT(err, 2.0 * 2.25 * omega * omega * dx * dx / 12.0);
    errs.push_back(err);
  }
  EXPECT_NEAR(errs[0] / errs[1], 4.0, 0.1);
  EXPECT_NEAR(errs[1] / errs[2], 4.0, 0.1);
}

TEST(FractionalLaplacian, RejectsNonFiniteInput) {
  KernelSpec spec{1.5, Grid1D(1.0, 8)};
  std::vector<double> f(8, 0.0);
  f[3] = NAN;
  EXPECT_THROW(apply_fractional_laplacian(spec, f), std::invalid_argument);
}
