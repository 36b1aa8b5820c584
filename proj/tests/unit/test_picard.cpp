#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracspde/error.hpp"
#include "fracspde/picard.hpp"

using namespace fracspde;

namespace {

SimConfig mesh(const std::string& preset) {
  SimConfig c;
  c.lambda = 2.0;
  c.grid = Grid1D(4.0, 32);
  c.dt = 0.01;
  c.n_steps = 20;
  c.coefficients = make_preset(preset);
  c.initial = {InitialKind::smooth_cosine, 1.0};
  return c;
}

// Periodic grid kernel at time t written as a direct cosine sum, in FFT order.
std::vector<double> grid_kernel(const SimConfig& c, double t) {
  const std::size_t n = c.grid.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double kk = k < n / 2 ? double(k) : double(k) - double(n);
      const double a = std::pow(std::abs(kk) / c.grid.length(), c.lambda);
      g[j] += std::exp(-t * a) * std::cos(2 * std::numbers::pi * double(j) * kk / double(n));
    }
    g[j] /= c.grid.length();
  }
  return g;
}

}  // namespace

TEST(Picard, ZeroCoefficientsGiveFixedPointAfterOneStep) {
  const auto c = mesh("zero");
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 1);
  const auto u0 = picard_zeroth(c, noise);
  const auto u1 = picard_iterate(u0, c, noise);
  EXPECT_EQ(sup_distance(u0, u1), 0.0);
  const auto r = picard_solve(c, noise, 1e-6, 5);
  ASSERT_EQ(r.distances.size(), 1u);
  EXPECT_EQ(r.distances[0], 0.0);
  const auto ev = evolve_mild(c, noise);
  EXPECT_LT(sup_distance(ev, r.solution), 1e-13);
}

TEST(Picard, AdditiveNoiseFixedPointEqualsEvolveMild) {
  for (auto scheme : {NoiseScheme::left_point, NoiseScheme::exact_variance}) {
    auto c = mesh("additive");
    c.noise_scheme = scheme;
    const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 2);
    const auto r = picard_solve(c, noise, 1e-12, 5);
    EXPECT_LE(r.distances.size(), 2u);
    EXPECT_LT(sup_distance(evolve_mild(c, noise), r.solution), 1e-12);
  }
}

TEST(Picard, ConstantForcingIsIntegratedExactly) {
  auto c = mesh("constant_forcing");
  c.initial = {InitialKind::constant, 0.0};
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 3);
  const auto r = picard_solve(c, noise, 1e-12, 5);
  for (std::size_t m = 0; m <= c.n_steps; ++m) {
    for (double v : r.solution.at(m)) EXPECT_NEAR(v, m * c.dt, 1e-12);
  }
}

TEST(Picard, IterateMatchesDirectVolterraSum) {
  auto c = mesh("affine");
  c.grid = Grid1D(2.0, 16);
  c.n_steps = 6;
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 4);
  const auto prev = picard_zeroth(c, noise);
  const auto next = picard_iterate(prev, c, noise);
  const std::size_t n = c.grid.size();
  const double dx = c.grid.dx();
  const auto& co = c.coefficients;
  for (std::size_t m : {1u, 3u, 6u}) {
    std::vector<std::vector<double>> g(m + 1);
    for (std::size_t lag = 0; lag <= m; ++lag) g[lag] = grid_kernel(c, lag * c.dt);
    for (std::size_t j : {0u, 5u, 11u}) {
      double ref = prev.at(m)[j];
      for (std::size_t l = 0; l <= m; ++l) {
        const double w = (l == 0 || l == m) ? 0.5 : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double x = c.grid.position(i);
          const double kern = g[m - l][(j + n - i) % n] * dx;
          // The lag-0 grid kernel is the discrete delta divided by dx.
          ref += c.dt * w * kern * co.b(l * c.dt, x, prev.at(l)[i]);
          if (l < m) ref += kern * co.sigma(l * c.dt, x, prev.at(l)[i]) * noise.row(l)[i] / dx;
        }
      }
      EXPECT_NEAR(next.at(m)[j], ref, 1e-12) << "m=" << m << " j=" << j;
    }
  }
}

TEST(Picard, AffineConvergesWithFactorialEnvelope) {
  auto c = mesh("affine");
  c.n_steps = 50;
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 5);
  const auto r = picard_solve(c, noise, 1e-10, 40);
  ASSERT_TRUE(r.converged);
  for (std::size_t i = 3; i + 1 < r.distances.size(); ++i) EXPECT_LT(r.distances[i], r.distances[i - 1]);
  const auto env = fit_factorial_envelope(r.distances, 3);
  EXPECT_TRUE(env.dominates);
  // The fixed point is a different discretization, close to the mild scheme.
  EXPECT_LT(sup_distance(evolve_mild(c, noise), r.solution), 0.05);
}

TEST(Picard, NonConvergenceCarriesDistances) {
  auto c = mesh("affine");
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 6);
  try {
    picard_solve(c, noise, 1e-14, 2);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.distances().size(), 2u);
  }
}

TEST(Picard, MeshMismatchIsRejected) {
  const auto c = mesh("affine");
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 7);
  auto other = c;
  other.n_steps = 10;
  const auto prev = picard_zeroth(other, sample_noise(c.grid, c.dt, 10, 7));
  EXPECT_THROW(picard_iterate(prev, c, noise), MeshMismatch);
  EXPECT_THROW(picard_zeroth(c, sample_noise(c.grid, c.dt, 10, 7)), MeshMismatch);
}

TEST(FactorialEnvelope, RecoversPlantedRate) {
  std::vector<double> d;
  for (int n = 1; n <= 12; ++n) d.push_back(3.0 * std::pow(2.5, n) / std::tgamma(n + 1.0));
  const auto env = fit_factorial_envelope(d, 3);
  EXPECT_NEAR(env.log_r, std::log(2.5), 1e-10);
  EXPECT_NEAR(env.log_c, std::log(3.0), 1e-9);
  EXPECT_TRUE(env.dominates);
}
