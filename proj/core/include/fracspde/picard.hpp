#pragma once

#include <cstddef>
#include <vector>

#include "fracspde/noise.hpp"
#include "fracspde/solver.hpp"

namespace fracspde {

/// u^0(t_m) = G(t_m) * u_0 on the whole time mesh.
Trajectory picard_zeroth(const SimConfig& config, const NoiseField& noise);

/// One application of the mild-solution map to `previous` under the frozen
/// noise. For every mesh time t_m:
///   u^0(t_m) + sum_{l<m} G(t_m - t_l) * sigma(u_l) dW_l / dx
///            + dt [ sum_{l<m} G(t_m - t_l) * b(u_l) - G(t_m) * b(u_0) / 2 + b(u_m) / 2 ].
/// The drift integral uses the trapezoid rule in s, which makes the fixed
/// point a different discretization from evolve_mild. Convolutions are
/// evaluated as products of spectra (the grid kernel's DFT is the symbol).
Trajectory picard_iterate(const Trajectory& previous, const SimConfig& config,
                          const NoiseField& noise);

struct PicardResult {
  Trajectory solution;
  std::vector<double> distances;  // M_n = sup |u^n - u^{n-1}|, n = 1..
  bool converged;
};

/// Iterates from u^0 until M_n < tol. Throws ConvergenceError (with the
/// distance history) if max_iter iterations do not get there.
PicardResult picard_solve(const SimConfig& config, const NoiseField& noise, double tol,
                          std::size_t max_iter);

/// sup over the mesh of |a - b|.
double sup_distance(const Trajectory& a, const Trajectory& b);

struct FactorialEnvelope {
  double log_c;
  double log_r;
  std::size_t first_n;
  std::vector<double> envelope;  // c R^n / n! at n = 1..size
  double max_log_residual;
  bool dominates;                // envelope >= distances for n >= first_n
};

/// Fits log M_n + log n! = log c + n log R over n >= first_n and raises the
/// intercept by the largest residual so the envelope dominates the fit range.
FactorialEnvelope fit_factorial_envelope(const std::vector<double>& distances, std::size_t first_n = 3);

}  // namespace fracspde
