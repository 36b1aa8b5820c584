#include "fracspde/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fracspde/rng.hpp"

namespace fracspde {

Coefficients make_preset(const std::string& name, double sigma0) {
  Coefficients c;
  c.name = name;
  if (name == "additive") {
    c.b = [](double, double, double) { return 0.0; };
    c.sigma = [sigma0](double, double, double) { return sigma0; };
    c.growth_constant = std::max(std::abs(sigma0), 1e-300);
    c.b_vanishes = true;
    c.sigma_vanishes = sigma0 == 0.0;
    c.sigma_constant = true;
  } else if (name == "affine") {
    c.b = [](double, double, double u) { return -u; };
    c.sigma = [](double, double, double u) { return std::clamp(1.0 + 0.5 * u, -50.0, 50.0); };
    c.lipschitz_constant = 1.0;
    c.growth_constant = 1.5;
  } else if (name == "bounded_smooth") {
    c.b = [](double, double, double u) { return std::cos(u); };
    c.sigma = [](double, double, double u) { return 1.0 + 0.5 * std::sin(u); };
    c.lipschitz_constant = 1.0;
    c.growth_constant = 2.5;
  } else if (name == "zero") {
    c.b = [](double, double, double) { return 0.0; };
    c.sigma = [](double, double, double) { return 0.0; };
    c.b_vanishes = c.sigma_vanishes = c.sigma_constant = true;
  } else if (name == "constant_forcing") {
    c.b = [sigma0](double, double, double) { return sigma0; };
    c.sigma = [](double, double, double) { return 0.0; };
    c.growth_constant = std::max(std::abs(sigma0), 1e-300);
    c.b_vanishes = sigma0 == 0.0;
    c.sigma_vanishes = c.sigma_constant = true;
  } else {
    throw std::invalid_argument("unknown coefficient preset '" + name +
                                "' (expected additive, affine, bounded_smooth, zero or constant_forcing)");
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"additive", "affine", "bounded_smooth", "zero", "constant_forcing"};
}

H0Report check_h0(const Coefficients& c, std::size_t n_samples, std::uint64_t seed) {
  auto eng = make_engine(seed, 0x40);
  std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-32.0, 32.0), mag(-3.0, 3.0);
  std::normal_distribution<double> normal;
  auto draw_u = [&] { return normal(eng) * std::pow(10.0, mag(eng)); };

  H0Report r;
  r.samples = n_samples;
  constexpr double slack = 1.0 + 1e-12;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = ut(eng), x = ux(eng), u = draw_u();
    // Second point: nearby half the time so small-scale Lipschitz is probed too.
    const double scale = (i % 2 == 0) ? 1.0 : 1e-3;
    const double s = std::clamp(t + scale * (ut(eng) - 0.5), 0.0, 1.0);
    const double y = x + scale * (ut(eng) - 0.5);
    const double v = u + scale * draw_u();

    const double growth = std::abs(c.b(t, x, u)) + std::abs(c.sigma(t, x, u));
    const double g_ratio = growth / (c.growth_constant * (1.0 + std::abs(u)));
    r.worst_growth_ratio = std::max(r.worst_growth_ratio, g_ratio);
    if (g_ratio > slack) ++r.growth_violations;

    const double dist = std::abs(t - s) + std::abs(x - y) + std::abs(u - v);
    if (dist > 0.0) {
      const double db = std::abs(c.b(t, x, u) - c.b(s, y, v));
      const double ds = std::abs(c.sigma(t, x, u) - c.sigma(s, y, v));
      const double l_ratio = std::max(db, ds) / (c.lipschitz_constant * dist);
      r.worst_lipschitz_ratio = std::max(r.worst_lipschitz_ratio, l_ratio);
      if (l_ratio > slack) ++r.lipschitz_violations;
    }
  }
  return r;
}

}  // namespace fracspde
