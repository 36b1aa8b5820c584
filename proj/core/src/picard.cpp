#include "fracspde/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracspde/error.hpp"
#include "fracspde/fft.hpp"
#include "fracspde/kernel.hpp"
#include "fracspde/stats.hpp"

namespace fracspde {

namespace {

void check_noise(const SimConfig& config, const NoiseField& noise) {
  if (!(noise.grid == config.grid) || noise.dt != config.dt || noise.n_steps != config.n_steps) {
    throw MeshMismatch("frozen noise does not match the Picard mesh");
  }
}

Trajectory empty_like(const SimConfig& config, const NoiseField& noise) {
  const std::size_t n = config.grid.size();
  return Trajectory{config.n_steps, n, std::vector<double>((config.n_steps + 1) * n), config,
                    noise.seed, 0.0};
}

}  // namespace

Trajectory picard_zeroth(const SimConfig& config, const NoiseField& noise) {
  validate(config);
  check_noise(config, noise);
  auto tr = empty_like(config, noise);
  const auto a = symbol_exponent({config.lambda, config.grid});
  RealFft fft(config.grid.size());
  const auto u0 = initial_values(config, config.seed);
  std::vector<Complex> u0h(fft.half_size()), work(fft.half_size());
  fft.forward(u0, u0h);
  std::copy(u0.begin(), u0.end(), tr.at(0).begin());
  for (std::size_t m = 1; m <= config.n_steps; ++m) {
    const double t = static_cast<double>(m) * config.dt;
    for (std::size_t k = 0; k < a.size(); ++k) work[k] = std::exp(-t * a[k]) * u0h[k];
    fft.inverse(work, tr.at(m));
  }
  return tr;
}

Trajectory picard_iterate(const Trajectory& previous, const SimConfig& config,
                          const NoiseField& noise) {
  validate(config);
  check_noise(config, noise);
  const std::size_t n = config.grid.size();
  if (previous.n_points != n || previous.n_steps != config.n_steps) {
    std::ostringstream os;
    os << "previous iterate mesh (" << previous.n_steps << " steps x " << previous.n_points
       << " points) differs from the config (" << config.n_steps << " x " << n << ")";
    throw MeshMismatch(os.str());
  }

  const auto& coef = config.coefficients;
  const double dt = config.dt;
  const double inv_dx = 1.0 / config.grid.dx();
  const auto a = symbol_exponent({config.lambda, config.grid});
  const std::size_t half = a.size();
  std::vector<double> prop(half), weight(half);
  for (std::size_t k = 0; k < half; ++k) {
    const double z = dt * a[k];
    prop[k] = std::exp(-z);
    weight[k] = config.noise_scheme == NoiseScheme::left_point
                    ? prop[k]
                    : (z > 0.0 ? std::sqrt(-std::expm1(-2.0 * z) / (2.0 * z)) : 1.0);
  }

  RealFft fft(n);
  std::vector<double> xs(n), work(n);
  for (std::size_t j = 0; j < n; ++j) xs[j] = config.grid.position(j);

  auto transform_b = [&](std::size_t m, std::vector<Complex>& out) {
    const double t = static_cast<double>(m) * dt;
    const auto u = previous.at(m);
    for (std::size_t j = 0; j < n; ++j) work[j] = coef.b(t, xs[j], u[j]);
    fft.forward(work, out);
  };

  auto next = empty_like(config, noise);
  const auto u0 = initial_values(config, config.seed);
  std::vector<Complex> u0h(half), stoch(half, 0.0), drift(half, 0.0), fb0(half), fb_prev(half),
      fb_cur(half), fs(half), total(half);
  fft.forward(u0, u0h);
  std::copy(u0.begin(), u0.end(), next.at(0).begin());
  const bool use_b = !coef.b_vanishes;
  const bool use_s = !coef.sigma_vanishes;
  if (use_b) {
    transform_b(0, fb0);
    fb_prev = fb0;
  }

  for (std::size_t m = 1; m <= config.n_steps; ++m) {
    const double t_prev = static_cast<double>(m - 1) * dt;
    if (use_s) {
      const auto u = previous.at(m - 1);
      const auto dw = noise.row(m - 1);
      for (std::size_t j = 0; j < n; ++j) work[j] = coef.sigma(t_prev, xs[j], u[j]) * dw[j] * inv_dx;
      fft.forward(work, fs);
      for (std::size_t k = 0; k < half; ++k) stoch[k] = prop[k] * stoch[k] + weight[k] * fs[k];
    }
    if (use_b) {
      // drift holds sum_{l<m} E^{m-l} F_b(l).
      for (std::size_t k = 0; k < half; ++k) drift[k] = prop[k] * (drift[k] + fb_prev[k]);
      transform_b(m, fb_cur);
    }
    const double t = static_cast<double>(m) * dt;
    for (std::size_t k = 0; k < half; ++k) {
      Complex v = std::exp(-t * a[k]) * u0h[k];
      if (use_s) v += stoch[k];
      if (use_b) v += dt * (drift[k] - 0.5 * std::exp(-t * a[k]) * fb0[k] + 0.5 * fb_cur[k]);
      total[k] = v;
    }
    fft.inverse(total, next.at(m));
    if (use_b) std::swap(fb_prev, fb_cur);
    for (double v : next.at(m)) {
      if (!std::isfinite(v)) throw NumericalError("non-finite Picard iterate value", m);
    }
  }
  return next;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  if (a.snapshots.size() != b.snapshots.size()) throw MeshMismatch("sup_distance: meshes differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    d = std::max(d, std::abs(a.snapshots[i] - b.snapshots[i]));
  }
  return d;
}

PicardResult picard_solve(const SimConfig& config, const NoiseField& noise, double tol,
                          std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("picard_solve: max_iter must be >= 1");
  auto current = picard_zeroth(config, noise);
  std::vector<double> distances;
  for (std::size_t it = 0; it < max_iter; ++it) {
    auto next = picard_iterate(current, config, noise);
    distances.push_back(sup_distance(next, current));
    current = std::move(next);
    if (distances.back() < tol) return {std::move(current), std::move(distances), true};
  }
  std::ostringstream os;
  os << "Picard iteration did not reach tol = " << tol << " within " << max_iter
     << " iterations (last distance " << distances.back() << ")";
  throw ConvergenceError(os.str(), std::move(distances));
}

FactorialEnvelope fit_factorial_envelope(const std::vector<double>& distances, std::size_t first_n) {
  std::vector<double> ns, ys;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const std::size_t nn = i + 1;
    if (nn < first_n || !(distances[i] > 0.0)) continue;
    ns.push_back(static_cast<double>(nn));
    ys.push_back(std::log(distances[i]) + std::lgamma(static_cast<double>(nn) + 1.0));
  }
  if (ns.size() < 2) throw std::invalid_argument("fit_factorial_envelope: need two positive distances at n >= first_n");
  const auto fit = fit_line(ns, ys);
  FactorialEnvelope env;
  env.first_n = first_n;
  env.max_log_residual = *std::max_element(fit.residuals.begin(), fit.residuals.end());
  env.log_c = fit.intercept + std::max(0.0, env.max_log_residual);
  env.log_r = fit.slope;
  env.dominates = true;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double nn = static_cast<double>(i + 1);
    const double e = std::exp(env.log_c + nn * env.log_r - std::lgamma(nn + 1.0));
    env.envelope.push_back(e);
    if (i + 1 >= first_n && distances[i] > e * (1.0 + 1e-9)) env.dominates = false;
  }
  return env;
}

}  // namespace fracspde
