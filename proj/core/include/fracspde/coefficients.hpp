#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fracspde {

using CoefficientFn = std::function<double(double t, double x, double u)>;

/// Drift b and noise amplitude sigma with their (H0) constants.
struct Coefficients {
  std::string name;
  CoefficientFn b;
  CoefficientFn sigma;
  double lipschitz_constant = 1.0;
  double growth_constant = 1.0;
  bool b_vanishes = false;
  bool sigma_vanishes = false;
  /// sigma does not depend on u (additive noise); lets the solver skip work.
  bool sigma_constant = false;
};

/// Named presets: "additive" (sigma = sigma0, b = 0), "affine"
/// (sigma = clamp(1 + u/2, -50, 50), b = -u), "bounded_smooth"
/// (sigma = 1 + sin(u)/2, b = cos u), "zero" (b = sigma = 0),
/// "constant_forcing" (b = sigma0, sigma = 0).
Coefficients make_preset(const std::string& name, double sigma0 = 1.0);

std::vector<std::string> preset_names();

struct H0Report {
  std::size_t samples = 0;
  std::size_t growth_violations = 0;
  std::size_t lipschitz_violations = 0;
  double worst_growth_ratio = 0.0;     // max (|b|+|sigma|) / (G (1+|u|))
  double worst_lipschitz_ratio = 0.0;  // max |f(p)-f(q)| / (K |p-q|_1)
  bool pass() const noexcept { return growth_violations == 0 && lipschitz_violations == 0; }
};

/// Randomized spot-check of the growth and Lipschitz bounds on sampled
/// (t, x, u) triples; u spans several orders of magnitude.
H0Report check_h0(const Coefficients& c, std::size_t n_samples, std::uint64_t seed);

}  // namespace fracspde
