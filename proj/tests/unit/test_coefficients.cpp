#include <gtest/gtest.h>

#include <cmath>

#include "fracspde/coefficients.hpp"
#include "fracspde/initial_condition.hpp"

using namespace fracspde;

TEST(Coefficients, PresetsPassRandomizedH0) {
  for (const auto& name : preset_names()) {
    const auto c = make_preset(name);
    const auto r = check_h0(c, 10000, 11);
    EXPECT_TRUE(r.pass()) << name << " growth " << r.worst_growth_ratio << " lip " << r.worst_lipschitz_ratio;
  }
}

TEST(Coefficients, AffineValuesAndClipping) {
  const auto c = make_preset("affine");
  EXPECT_DOUBLE_EQ(c.sigma(0, 0, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(c.sigma(0, 0, 1e6), 50.0);
  EXPECT_DOUBLE_EQ(c.sigma(0, 0, -1e6), -50.0);
  EXPECT_DOUBLE_EQ(c.b(0, 0, 3.0), -3.0);
}

TEST(Coefficients, SpotCheckCatchesQuadraticNoise) {
  auto c = make_preset("affine");
  c.sigma = [](double, double, double u) { return u * u; };
  EXPECT_FALSE(check_h0(c, 2000, 3).pass());
}

TEST(Coefficients, UnknownPresetIsAnError) {
  EXPECT_THROW(make_preset("cubic"), std::invalid_argument);
}

TEST(InitialCondition, DeclaredRho) {
  EXPECT_EQ(declared_rho({InitialKind::smooth_cosine, 1.0, 0.3}), 1.0);
  EXPECT_EQ(declared_rho({InitialKind::hoelder_rough, 1.0, 0.3}), 0.3);
  EXPECT_EQ(declared_rho({InitialKind::constant, 2.0}), 1.0);
}

TEST(InitialCondition, RoughSeriesHasPrescribedIncrementScaling) {
  // sup_x |u(x+z) - u(x)| for a lacunary series scales like z^rho.
  Grid1D g(0.5, 1 << 14);
  const double rho = 0.4;
  const auto u = realize({InitialKind::hoelder_rough, 1.0, rho}, g, 5);
  auto osc = [&](std::size_t r) {
    double m = 0;
    for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u[(j + r) % u.size()] - u[j]));
    return m;
  };
  const double slope = std::log(osc(8) / osc(128)) / std::log(8.0 / 128.0);
  EXPECT_NEAR(slope, rho, 0.1);
}

TEST(InitialCondition, RandomFieldIsBoundedAndSeeded) {
  Grid1D g(4, 256);
  const auto a = realize({InitialKind::random_field, 2.0}, g, 1);
  const auto b = realize({InitialKind::random_field, 2.0}, g, 1);
  const auto c = realize({InitialKind::random_field, 2.0}, g, 2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (double v : a) EXPECT_LE(std::abs(v), 2.0);
}

TEST(InitialCondition, ShiftRotatesValues) {
  Grid1D g(1, 16);
  InitialCondition ic{InitialKind::smooth_cosine, 1.0};
  const auto a = realize(ic, g, 0);
  ic.shift_cells = 3;
  const auto b = realize(ic, g, 0);
  for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(b[(j + 3) % 16], a[j]);
}
