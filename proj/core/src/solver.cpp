#include "fracspde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracspde/error.hpp"
#include "fracspde/kernel.hpp"

namespace fracspde {

std::string to_string(NoiseScheme s) {
  return s == NoiseScheme::left_point ? "left_point" : "exact_variance";
}

NoiseScheme parse_noise_scheme(const std::string& name) {
  if (name == "left_point") return NoiseScheme::left_point;
  if (name == "exact_variance") return NoiseScheme::exact_variance;
  throw std::invalid_argument("unknown noise scheme '" + name +
                              "' (expected left_point or exact_variance)");
}

void validate(const SimConfig& c) {
  if (!(c.lambda > 1.0 && c.lambda <= 2.0)) {
    std::ostringstream os;
    os << "lambda = " << c.lambda << " is outside the admissible range (1, 2]";
    throw std::invalid_argument(os.str());
  }
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw std::invalid_argument("dt must be positive");
  if (c.n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
  if (!c.coefficients.b || !c.coefficients.sigma) {
    throw std::invalid_argument("coefficients must define both b and sigma");
  }
}

std::vector<double> initial_values(const SimConfig& config, std::uint64_t seed) {
  return realize(config.initial, config.grid, seed);
}

MildStepper::MildStepper(const SimConfig& config) : config_(config), fft_(config.grid.size()) {
  validate(config_);
  const auto a = symbol_exponent({config_.lambda, config_.grid});
  const std::size_t half = a.size();
  prop_.resize(half);
  noise_weight_.resize(half);
  for (std::size_t k = 0; k < half; ++k) {
    const double z = config_.dt * a[k];
    prop_[k] = std::exp(-z);
    if (config_.noise_scheme == NoiseScheme::left_point) {
      noise_weight_[k] = prop_[k];
    } else {
      noise_weight_[k] = z > 0.0 ? std::sqrt(-std::expm1(-2.0 * z) / (2.0 * z)) : 1.0;
    }
  }
  const std::size_t n = config_.grid.size();
  u_.resize(n);
  work_.resize(n);
  dw_.resize(n);
  xs_.resize(n);
  for (std::size_t j = 0; j < n; ++j) xs_[j] = config_.grid.position(j);
  uh_.resize(half);
  bh_.resize(half);
  sh_.resize(half);
}

double MildStepper::run(std::span<const double> u0, const NoiseSource& noise,
                        const Observer& observe, std::size_t last_step) {
  const std::size_t n = config_.grid.size();
  if (u0.size() != n) {
    throw MeshMismatch("initial data has " + std::to_string(u0.size()) + " values, grid has " +
                       std::to_string(n));
  }
  last_step = std::min(last_step, config_.n_steps);
  const auto& coef = config_.coefficients;
  const double dt = config_.dt;
  const double inv_dx = 1.0 / config_.grid.dx();

  std::copy(u0.begin(), u0.end(), u_.begin());
  if (observe) observe(0, u_);
  fft_.forward(u_, uh_);

  double residue = 0.0;
  for (std::size_t m = 0; m < last_step; ++m) {
    const double t = static_cast<double>(m) * dt;
    const bool drift = !coef.b_vanishes;
    const bool diffusion = !coef.sigma_vanishes;
    if (drift) {
      for (std::size_t j = 0; j < n; ++j) work_[j] = coef.b(t, xs_[j], u_[j]);
      fft_.forward(work_, bh_);
    }
    if (diffusion) {
      noise(m, dw_);
      if (coef.sigma_constant) {
        const double s = coef.sigma(t, 0.0, 0.0) * inv_dx;
        for (std::size_t j = 0; j < n; ++j) work_[j] = s * dw_[j];
      } else {
        for (std::size_t j = 0; j < n; ++j) work_[j] = coef.sigma(t, xs_[j], u_[j]) * dw_[j] * inv_dx;
      }
      fft_.forward(work_, sh_);
    }
    for (std::size_t k = 0; k < uh_.size(); ++k) {
      Complex v = uh_[k];
      if (drift) v += dt * bh_[k];
      v *= prop_[k];
      if (diffusion) v += noise_weight_[k] * sh_[k];
      uh_[k] = v;
    }
    residue = std::max({residue, std::abs(uh_.front().imag()), std::abs(uh_.back().imag())});
    fft_.inverse(uh_, u_);
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(u_[j])) {
        std::ostringstream os;
        os << "non-finite solution value at step " << m + 1 << " (t = " << t + dt << ", cell " << j
           << ")";
        throw NumericalError(os.str(), m + 1);
      }
    }
    if (observe) observe(m + 1, u_);
  }
  return residue;
}

Trajectory evolve_mild(const SimConfig& config, const NoiseField& noise) {
  validate(config);
  if (!(noise.grid == config.grid) || noise.dt != config.dt || noise.n_steps != config.n_steps) {
    std::ostringstream os;
    os << "noise shape (N = " << noise.grid.size() << ", L = " << noise.grid.half_width()
       << ", dt = " << noise.dt << ", steps = " << noise.n_steps << ") does not match the config (N = "
       << config.grid.size() << ", L = " << config.grid.half_width() << ", dt = " << config.dt
       << ", steps = " << config.n_steps << ")";
    throw MeshMismatch(os.str());
  }
  const std::size_t n = config.grid.size();
  Trajectory tr{config.n_steps, n, std::vector<double>((config.n_steps + 1) * n), config, noise.seed, 0.0};
  MildStepper stepper(config);
  const auto u0 = initial_values(config, config.seed);
  tr.max_imag_residue = stepper.run(
      u0,
      [&](std::size_t m, std::span<double> out) {
        const auto r = noise.row(m);
        std::copy(r.begin(), r.end(), out.begin());
      },
      [&](std::size_t m, std::span<const double> u) { std::copy(u.begin(), u.end(), tr.at(m).begin()); });
  return tr;
}

void evolve_streaming(const SimConfig& config, const NoiseStream& noise, const Observer& observe) {
  if (!(noise.grid() == config.grid) || noise.dt() != config.dt) {
    throw MeshMismatch("noise stream grid or dt does not match the config");
  }
  MildStepper stepper(config);
  const auto u0 = initial_values(config, config.seed);
  stepper.run(u0, [&](std::size_t m, std::span<double> out) { noise.fill(m, out); }, observe);
}

}  // namespace fracspde
