#include "fracspde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fracspde/error.hpp"
#include "fracspde/parallel.hpp"
#include "fracspde/rng.hpp"
#include "fracspde/stats.hpp"

namespace fracspde {

namespace {

constexpr std::size_t kBlock = 8;

void check_lambda_rho(double lambda, double rho) {
  if (!(lambda > 1.0 && lambda <= 2.0)) {
    throw std::invalid_argument("lambda must lie in (1, 2], got " + std::to_string(lambda));
  }
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in (0, 1], got " + std::to_string(rho));
  }
}

std::size_t mesh_index(double value, double unit, const char* what) {
  const double q = value / unit;
  const double k = std::round(q);
  if (q < -1e-9 || std::abs(q - k) > 1e-6 * std::max(1.0, q)) {
    std::ostringstream os;
    os << what << " " << value << " is not a nonnegative multiple of the mesh spacing " << unit;
    throw std::invalid_argument(os.str());
  }
  return static_cast<std::size_t>(k);
}

SimConfig replicate_config(const SimConfig& config, std::uint64_t seed, std::size_t r) {
  SimConfig c = config;
  c.seed = derive_seed(seed, r, 1);
  return c;
}

// Runs replicates in fixed blocks; `body(stepper, r, u0, noise_seed)` per
// replicate. Solver failures are rethrown with the replicate index.
template <typename Body>
void for_replicates(const SimConfig& config, std::size_t n_replicates, std::uint64_t seed,
                    std::size_t n_blocks, Body&& body) {
  parallel_for(n_blocks, [&](std::size_t b) {
    MildStepper stepper(config);
    const std::size_t r_end = std::min(n_replicates, (b + 1) * kBlock);
    for (std::size_t r = b * kBlock; r < r_end; ++r) {
      const auto rc = replicate_config(config, seed, r);
      const auto u0 = initial_values(rc, rc.seed);
      NoiseStream noise(config.grid, config.dt, derive_seed(seed, r, 0));
      try {
        body(b, stepper, u0, noise);
      } catch (const NumericalError& e) {
        throw NumericalError("replicate " + std::to_string(r) + ": " + e.what(), e.step());
      }
    }
  });
}

}  // namespace

Exponents theoretical_exponents(double lambda, double rho) {
  check_lambda_rho(lambda, rho);
  return {std::min(rho / lambda, (lambda - 1.0) / (2.0 * lambda)), std::min(rho, (lambda - 1.0) / 2.0)};
}

Exponents remark_exponents(double lambda) {
  check_lambda_rho(lambda, 1.0);
  return {(lambda - 1.0) / (2.0 * lambda), (lambda - 1.0) / 2.0};
}

std::string to_string(Direction d) { return d == Direction::time ? "time" : "space"; }

std::vector<MomentEstimate> estimate_moments(const SimConfig& config, std::span<const double> ps,
                                             double t, std::size_t n_replicates, std::uint64_t seed) {
  validate(config);
  for (double p : ps) {
    if (!(p >= 1.0)) throw std::invalid_argument("moment order p must be >= 1, got " + std::to_string(p));
  }
  if (ps.empty()) throw std::invalid_argument("estimate_moments: no moment orders given");
  if (n_replicates < 2) throw std::invalid_argument("estimate_moments: need at least 2 replicates");
  const std::size_t step = mesh_index(t, config.dt, "time");
  if (step > config.n_steps) {
    throw std::invalid_argument("time " + std::to_string(t) + " is beyond the horizon " +
                                std::to_string(config.horizon()));
  }
  const std::size_t n = config.grid.size();
  const std::size_t np = ps.size();
  const std::size_t n_blocks = (n_replicates + kBlock - 1) / kBlock;
  std::vector<std::vector<MeanAccumulator>> acc(n_blocks, std::vector<MeanAccumulator>(np * n));

  for_replicates(config, n_replicates, seed, n_blocks,
                 [&](std::size_t b, MildStepper& stepper, const std::vector<double>& u0,
                     const NoiseStream& noise) {
                   auto& a = acc[b];
                   stepper.run(
                       u0, [&](std::size_t m, std::span<double> out) { noise.fill(m, out); },
                       [&](std::size_t m, std::span<const double> u) {
                         if (m != step) return;
                         for (std::size_t i = 0; i < np; ++i) {
                           for (std::size_t j = 0; j < n; ++j) {
                             const double v = std::abs(u[j]);
                             a[i * n + j].add(ps[i] == 2.0 ? v * v : std::pow(v, ps[i]));
                           }
                         }
                       },
                       step);
                 });

  std::vector<MeanAccumulator> total(np * n);
  for (const auto& blk : acc) {
    for (std::size_t q = 0; q < total.size(); ++q) total[q].merge(blk[q]);
  }
  std::vector<MomentEstimate> out;
  for (std::size_t i = 0; i < np; ++i) {
    MomentEstimate e{ps[i], static_cast<double>(step) * config.dt, step, 0.0, 0, {}, {}, n_replicates};
    e.values.resize(n);
    e.std_errors.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      e.values[j] = total[i * n + j].mean();
      e.std_errors[j] = total[i * n + j].stderr_of_mean();
      if (!std::isfinite(e.values[j])) throw NumericalError("non-finite moment estimate", step);
    }
    const auto it = std::max_element(e.values.begin(), e.values.end());
    e.argmax = static_cast<std::size_t>(it - e.values.begin());
    e.sup_over_grid = *it;
    out.push_back(std::move(e));
  }
  return out;
}

MomentEstimate estimate_moments(const SimConfig& config, double p, double t,
                                std::size_t n_replicates, std::uint64_t seed) {
  const double ps[] = {p};
  return std::move(estimate_moments(config, ps, t, n_replicates, seed).front());
}

std::vector<IncrementTable> increment_tables(const SimConfig& config, Direction direction,
                                             std::span<const double> ps,
                                             std::span<const double> lags,
                                             std::size_t n_replicates, std::uint64_t seed,
                                             const IncrementOptions& options) {
  validate(config);
  if (ps.empty()) throw std::invalid_argument("increment_table: no moment orders given");
  for (double p : ps) {
    if (!(p >= 1.0)) throw std::invalid_argument("moment order p must be >= 1, got " + std::to_string(p));
  }
  if (lags.empty()) throw std::invalid_argument("increment_table: no lags given");
  if (n_replicates < 2) throw std::invalid_argument("increment_table: need at least 2 replicates");
  if (options.time_stride == 0 || options.space_stride == 0) {
    throw std::invalid_argument("increment_table: strides must be >= 1");
  }

  const bool in_time = direction == Direction::time;
  const double unit = in_time ? config.dt : config.grid.dx();
  std::vector<std::size_t> k_lags;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    k_lags.push_back(mesh_index(lags[i], unit, in_time ? "time lag" : "space lag"));
    if (i > 0 && !(lags[i] > lags[i - 1])) throw std::invalid_argument("lags must be strictly increasing");
  }
  const std::size_t max_lag = k_lags.back();
  const std::size_t n = config.grid.size();
  const std::size_t steps = config.n_steps;
  if (!in_time && max_lag >= n) throw std::invalid_argument("space lag exceeds the grid");
  if (in_time && max_lag > steps) throw std::invalid_argument("time lag exceeds the horizon");

  const double T = config.horizon();
  const double lo_t = options.base_time_lo >= 0.0 ? options.base_time_lo : T / 2.0;
  double hi_t = options.base_time_hi;
  if (hi_t < 0.0) hi_t = in_time ? T - static_cast<double>(max_lag) * config.dt : T;
  const auto lo = static_cast<std::size_t>(std::ceil(lo_t / config.dt - 1e-9));
  const auto hi = static_cast<std::size_t>(std::floor(hi_t / config.dt + 1e-9));
  std::vector<std::size_t> base_steps;
  for (std::size_t m = lo; m <= hi && m <= steps; m += options.time_stride) {
    if (in_time && m + max_lag > steps) break;
    base_steps.push_back(m);
  }
  if (base_steps.empty()) {
    std::ostringstream os;
    os << "no admissible base times in [" << lo_t << ", " << hi_t << "] with the largest lag";
    throw std::invalid_argument(os.str());
  }
  std::vector<std::size_t> base_cells;
  for (std::size_t j = 0; j < n; j += options.space_stride) base_cells.push_back(j);

  const std::size_t nb_t = base_steps.size();
  const std::size_t nb_x = base_cells.size();
  const std::size_t nl = k_lags.size();
  const std::size_t np = ps.size();
  const std::size_t slots = np * nl * nb_t * nb_x;
  const std::size_t last = in_time ? base_steps.back() + max_lag : base_steps.back();
  const std::size_t first = base_steps.front();

  const std::size_t n_blocks = (n_replicates + kBlock - 1) / kBlock;
  std::vector<std::vector<MeanAccumulator>> acc(n_blocks, std::vector<MeanAccumulator>(slots));

  auto power = [&](double v, std::size_t i) { return ps[i] == 2.0 ? v * v : std::pow(std::abs(v), ps[i]); };

  for_replicates(config, n_replicates, seed, n_blocks,
                 [&](std::size_t b, MildStepper& stepper, const std::vector<double>& u0,
                     const NoiseStream& noise) {
                   auto& a = acc[b];
                   // Window of snapshots [first, last].
                   std::vector<double> window((last - first + 1) * n);
                   stepper.run(
                       u0, [&](std::size_t m, std::span<double> out) { noise.fill(m, out); },
                       [&](std::size_t m, std::span<const double> u) {
                         if (m < first || m > last) return;
                         std::copy(u.begin(), u.end(), window.begin() + static_cast<std::ptrdiff_t>((m - first) * n));
                       },
                       last);
                   auto at = [&](std::size_t m, std::size_t j) { return window[(m - first) * n + j]; };
                   for (std::size_t bt = 0; bt < nb_t; ++bt) {
                     const std::size_t m = base_steps[bt];
                     for (std::size_t l = 0; l < nl; ++l) {
                       for (std::size_t bx = 0; bx < nb_x; ++bx) {
                         const std::size_t j = base_cells[bx];
                         const double d = in_time ? at(m + k_lags[l], j) - at(m, j)
                                                  : at(m, (j + k_lags[l]) % n) - at(m, j);
                         for (std::size_t i = 0; i < np; ++i) {
                           a[((i * nl + l) * nb_t + bt) * nb_x + bx].add(power(d, i));
                         }
                       }
                     }
                   }
                 });

  std::vector<MeanAccumulator> total(slots);
  for (const auto& blk : acc) {
    for (std::size_t q = 0; q < slots; ++q) total[q].merge(blk[q]);
  }

  std::vector<IncrementTable> out;
  for (std::size_t i = 0; i < np; ++i) {
    IncrementTable t{direction, ps[i], config.lambda, declared_rho(config.initial),
                     std::vector<double>(lags.begin(), lags.end()), {}, {}, n_replicates, nb_t * nb_x};
    for (std::size_t l = 0; l < nl; ++l) {
      double best = -std::numeric_limits<double>::infinity();
      double best_se = 0.0;
      for (std::size_t q = 0; q < nb_t * nb_x; ++q) {
        const auto& s = total[(i * nl + l) * nb_t * nb_x + q];
        if (s.mean() > best) {
          best = s.mean();
          best_se = s.stderr_of_mean();
        }
      }
      t.moments.push_back(best);
      t.std_errors.push_back(best_se);
    }
    out.push_back(std::move(t));
  }
  return out;
}

IncrementTable increment_table(const SimConfig& config, Direction direction, double p,
                               std::span<const double> lags, std::size_t n_replicates,
                               std::uint64_t seed, const IncrementOptions& options) {
  const double ps[] = {p};
  return std::move(increment_tables(config, direction, ps, lags, n_replicates, seed, options).front());
}

HolderFit fit_holder_exponent(const IncrementTable& table) {
  const std::size_t n = table.lags.size();
  if (n < 4) throw std::invalid_argument("fit_holder_exponent: need at least 4 lags, got " + std::to_string(n));
  if (table.moments.size() != n) throw std::invalid_argument("fit_holder_exponent: lags and moments differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(table.lags[i] > 0.0)) throw std::invalid_argument("fit_holder_exponent: lags must be positive");
    if (i > 0 && !(table.lags[i] > table.lags[i - 1])) {
      throw std::invalid_argument("fit_holder_exponent: lags must be strictly increasing");
    }
    if (!(table.moments[i] > 0.0)) {
      std::ostringstream os;
      os << "fit_holder_exponent: nonpositive moment " << table.moments[i] << " at lag " << table.lags[i];
      throw std::invalid_argument(os.str());
    }
  }
  if (table.lags.back() / table.lags.front() < 10.0 * (1.0 - 1e-12)) {
    throw std::invalid_argument("fit_holder_exponent: lags must span at least one decade");
  }
  if (!(table.p > 0.0)) throw std::invalid_argument("fit_holder_exponent: p must be positive");

  std::vector<double> x(n), y(n), w;
  bool weighted = table.std_errors.size() == n;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(table.lags[i]);
    y[i] = std::log(table.moments[i]);
    if (weighted) {
      const double rel = table.std_errors[i] / table.moments[i];
      if (!(rel > 0.0)) weighted = false;
      else w.push_back(1.0 / (rel * rel));
    }
  }
  if (!weighted) w.clear();
  const auto fit = fit_line(x, y, w);

  HolderFit h;
  h.direction = table.direction;
  h.p = table.p;
  h.estimated_gamma = fit.slope / table.p;
  // An exact power law has zero residual scatter; keep the error strictly positive.
  h.std_error = std::max(fit.slope_stderr / table.p,
                         std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(h.estimated_gamma)));
  const auto ex = theoretical_exponents(table.lambda, table.rho);
  h.theoretical_bound = table.direction == Direction::time ? ex.alpha_max : ex.beta_max;
  h.log_constant = fit.intercept;
  h.n_points = n;
  return h;
}

}  // namespace fracspde
