#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fracspde/coefficients.hpp"
#include "fracspde/fft.hpp"
#include "fracspde/grid.hpp"
#include "fracspde/initial_condition.hpp"
#include "fracspde/noise.hpp"

namespace fracspde {

/// How the noise increment of one step is propagated.
///   left_point      E (u + dt b + sigma dW/dx): kernel frozen at the left end
///                   of the step, like the drift.
///   exact_variance  the noise term is weighted by sqrt((1 - E^2) / (2 dt a))
///                   instead of E, which reproduces the exact per-mode
///                   variance of the continuous stochastic convolution over
///                   the step. Used for regularity measurements.
enum class NoiseScheme { left_point, exact_variance };

std::string to_string(NoiseScheme s);
NoiseScheme parse_noise_scheme(const std::string& name);

struct SimConfig {
  double lambda = 2.0;
  Grid1D grid{16.0, 1024};
  double dt = 1e-3;
  std::size_t n_steps = 500;
  Coefficients coefficients = make_preset("additive");
  InitialCondition initial{};
  std::uint64_t seed = 0;  // seeds random initial data
  NoiseScheme noise_scheme = NoiseScheme::left_point;

  double horizon() const noexcept { return dt * static_cast<double>(n_steps); }
};

/// Throws std::invalid_argument unless lambda in (1, 2], dt > 0, n_steps >= 1.
void validate(const SimConfig& config);

struct Trajectory {
  std::size_t n_steps;
  std::size_t n_points;
  std::vector<double> snapshots;  // (n_steps + 1) x N, row m at time m dt
  SimConfig config;
  std::uint64_t seed;             // noise seed
  double max_imag_residue = 0.0;

  std::span<const double> at(std::size_t m) const {
    return {snapshots.data() + m * n_points, n_points};
  }
  std::span<double> at(std::size_t m) {
    return {snapshots.data() + m * n_points, n_points};
  }
};

/// Called with (step index m, u(t_m, .)) for m = 0..n_steps.
using Observer = std::function<void(std::size_t, std::span<const double>)>;
/// Writes the noise increments of step m into the span.
using NoiseSource = std::function<void(std::size_t, std::span<double>)>;

/// Reusable exponential-Euler stepper; holds FFT plans and work buffers so
/// Monte Carlo loops do not re-plan per replicate. One instance per thread.
class MildStepper {
 public:
  explicit MildStepper(const SimConfig& config);

  const SimConfig& config() const noexcept { return config_; }

  /// Runs steps 0..n_steps-1 from u0 and returns the largest imaginary
  /// residue seen in the self-conjugate modes. `last_step` lets callers stop
  /// early (observer still sees m = 0..last_step).
  double run(std::span<const double> u0, const NoiseSource& noise, const Observer& observe,
             std::size_t last_step);
  double run(std::span<const double> u0, const NoiseSource& noise, const Observer& observe) {
    return run(u0, noise, observe, config_.n_steps);
  }

  /// Per-mode propagator E_k = exp(-dt |xi_k|^lambda) and noise weight.
  const std::vector<double>& propagator() const noexcept { return prop_; }
  const std::vector<double>& noise_weight() const noexcept { return noise_weight_; }

 private:
  SimConfig config_;
  RealFft fft_;
  std::vector<double> prop_;
  std::vector<double> noise_weight_;
  std::vector<double> u_, work_, dw_, xs_;
  std::vector<Complex> uh_, bh_, sh_;
};

/// Full trajectory under a materialized noise field.
Trajectory evolve_mild(const SimConfig& config, const NoiseField& noise);

/// Same recursion with noise rows generated on demand; nothing is stored.
void evolve_streaming(const SimConfig& config, const NoiseStream& noise, const Observer& observe);

/// Initial data for a replicate: realize(config.initial, grid, seed).
std::vector<double> initial_values(const SimConfig& config, std::uint64_t seed);

}  // namespace fracspde
