#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <unistd.h>

#include <fracspde/analysis.hpp>
#include <fracspde/appendix.hpp>
#include <fracspde/kernel.hpp>
#include <fracspde/noise.hpp>
#include <fracspde/picard.hpp>
#include <fracspde/rng.hpp>
#include <fracspde/solver.hpp>

#include "json.hpp"

namespace fracspde::harness {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::size_t step_of(double t, double dt) { return static_cast<std::size_t>(std::lround(t / dt)); }

void verify_kernel(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  const KernelSpec spec{c.lambda, Grid1D(c.grid_l, c.grid_n)};
  const double dx = spec.grid.dx();
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    const double t = c.t[i];
    const long idx = static_cast<long>(i);
    const auto kv = kernel_values(spec, t);
    double mass = 0, mn = kv.values[0], l2 = 0;
    for (double v : kv.values) {
      mass += v;
      l2 += v * v;
      mn = std::min(mn, v);
    }
    rows.push_back({"t", idx, t, kNone});
    rows.push_back({"mass_error", idx, mass * dx - 1.0, kNone});
    rows.push_back({"min_value", idx, mn, kNone});
    rows.push_back({"l2_norm_squared", idx, l2 * dx, kNone});
    rows.push_back({"self_similarity_residual", idx, self_similarity_residual(spec, t), kNone});
    rows.push_back({"semigroup_residual", idx, semigroup_residual(spec, t / 2, t / 2), kNone});
    if (c.lambda == 2.0) {
      double e = 0;
      for (std::size_t j = 0; j < kv.values.size(); ++j) {
        e = std::max(e, std::abs(kv.values[j] - kernel_closed_form(2.0, t, spec.grid.offset(j))));
      }
      rows.push_back({"closed_form_sup_error", idx, e, kNone});
    }
  }
  if (c.t.size() >= 3) {
    const auto s = l2_time_scaling(spec, c.t);
    rows.push_back({"l2_slope", 0, s.slope, kNone});
    rows.push_back({"l2_constant", 0, s.constant, kNone});
  }
  rows.push_back({"l2_constant_exact", 0, l2_constant(c.lambda), kNone});
  const auto pi = power_integrability_exponent(c.lambda, 2.0);
  rows.push_back({"square_integrable_time_exponent", 0, pi.time_exponent, kNone});
  rows.push_back({"square_integrable", 0, pi.overall_finite ? 1.0 : 0.0, kNone});
}

void simulate(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  const SimConfig sim = c.sim();
  std::vector<std::size_t> steps;
  for (double t : c.t) steps.push_back(step_of(t, c.dt));
  for (std::size_t j = 0; j < c.grid_n; ++j) rows.push_back({"x", static_cast<long>(j), sim.grid.position(j), kNone});
  std::vector<std::vector<double>> snaps(steps.size());
  evolve_streaming(sim, NoiseStream(sim.grid, sim.dt, c.seed), [&](std::size_t m, std::span<const double> u) {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i] == m) snaps[i].assign(u.begin(), u.end());
  });
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string q = "u[t=" + short_num(c.t[i]) + "]";
    for (std::size_t j = 0; j < snaps[i].size(); ++j) rows.push_back({q, static_cast<long>(j), snaps[i][j], kNone});
  }
}

void picard_demo(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  const SimConfig sim = c.sim();
  const auto noise = sample_noise(sim.grid, sim.dt, sim.n_steps, c.seed);
  const auto res = picard_solve(sim, noise, c.tol, c.max_iter);
  for (std::size_t n = 0; n < res.distances.size(); ++n) {
    rows.push_back({"distance", static_cast<long>(n + 1), res.distances[n], kNone});
  }
  if (res.distances.size() >= 5) {
    const auto env = fit_factorial_envelope(res.distances);
    for (std::size_t n = 0; n < env.envelope.size(); ++n) {
      rows.push_back({"factorial_envelope", static_cast<long>(n + 1), env.envelope[n], kNone});
    }
    rows.push_back({"envelope_log_rate", 0, env.log_r, kNone});
  }
  rows.push_back({"iterations", 0, static_cast<double>(res.distances.size()), kNone});
  rows.push_back({"fixed_point_gap", 0, sup_distance(res.solution, evolve_mild(sim, noise)), kNone});
}

void regularity_sweep(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  const SimConfig sim = c.sim();
  IncrementOptions opt;
  opt.base_time_lo = c.base_time_lo;
  opt.base_time_hi = c.base_time_hi;
  opt.time_stride = c.time_stride;
  opt.space_stride = c.space_stride;
  const auto ex = theoretical_exponents(c.lambda, c.rho);
  rows.push_back({"alpha_max", 0, ex.alpha_max, kNone});
  rows.push_back({"beta_max", 0, ex.beta_max, kNone});
  for (Direction d : {Direction::time, Direction::space}) {
    std::vector<double> lags;
    for (long l : d == Direction::time ? c.time_lags : c.space_lags) {
      lags.push_back(static_cast<double>(l) * (d == Direction::time ? c.dt : sim.grid.dx()));
    }
    const auto tables = increment_tables(sim, d, c.p, lags, c.n_replicates,
                                         derive_seed(c.seed, d == Direction::time ? 1 : 2), opt);
    const std::string dir = to_string(d);
    for (std::size_t i = 0; i < lags.size(); ++i) rows.push_back({dir + "_lag", static_cast<long>(i), lags[i], kNone});
    for (const auto& tab : tables) {
      const std::string tag = "[p=" + short_num(tab.p) + "]";
      for (std::size_t i = 0; i < tab.lags.size(); ++i) {
        rows.push_back({dir + "_moment" + tag, static_cast<long>(i), tab.moments[i], tab.std_errors[i]});
      }
      const auto fit = fit_holder_exponent(tab);
      rows.push_back({dir + "_gamma" + tag, 0, fit.estimated_gamma, fit.std_error});
    }
  }
}

void moments(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  const SimConfig sim = c.sim();
  for (double t : c.t) {
    const auto est = estimate_moments(sim, c.p, t, c.n_replicates, c.seed);
    for (const auto& e : est) {
      const std::string tag = "[p=" + short_num(e.p) + ",t=" + short_num(t) + "]";
      for (std::size_t j = 0; j < e.values.size(); ++j) {
        rows.push_back({"moment" + tag, static_cast<long>(j), e.values[j], e.std_errors[j]});
      }
      rows.push_back({"sup_moment" + tag, static_cast<long>(e.argmax), e.sup_over_grid, e.std_errors[e.argmax]});
    }
  }
}

void appendix_check(const ExperimentConfig& c, std::vector<ResultRow>& rows) {
  for (double q : {1.5, 2.0, 3.0, 7.0}) {
    const auto s = weighted_holder_suite(q, c.instances, c.seed);
    const std::string tag = "[q=" + short_num(q) + "]";
    rows.push_back({"holder_violations" + tag, 0, static_cast<double>(s.violations), kNone});
    rows.push_back({"holder_worst_ratio" + tag, 0, s.worst_ratio, kNone});
  }
  const std::vector<double> times = {0.05, 0.1, 0.25, 0.5, 0.75, 1.0};
  for (double theta : {0.25, 1.0 / 3, 0.5, 1.0}) {
    double worst = 0;
    long worst_n = 0;
    bool pass = true;
    for (double alpha : {0.0, 1.0}) {
      for (double beta : {0.5, 1.0, 2.0}) {
        const auto g = gronwall_property_check({theta, alpha, beta, 1.0}, times, 10, c.seed);
        pass = pass && g.pass;
        if (g.worst_ratio > worst) {
          worst = g.worst_ratio;
          worst_n = static_cast<long>(g.worst_n);
        }
      }
    }
    const std::string tag = "[theta=" + short_num(theta) + "]";
    rows.push_back({"gronwall_worst_ratio" + tag, worst_n, worst, kNone});
    rows.push_back({"gronwall_pass" + tag, 0, pass ? 1.0 : 0.0, kNone});
  }
}

nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["command"] = to_string(c.command);
  j["lambda"] = c.lambda;
  j["rho"] = c.rho;
  j["preset"] = c.preset;
  j["sigma0"] = c.sigma0;
  j["grid_n"] = c.grid_n;
  j["grid_l"] = c.grid_l;
  j["dt"] = c.dt;
  j["horizon"] = c.horizon;
  j["initial"] = c.initial;
  j["initial_amplitude"] = c.initial_amplitude;
  j["noise_scheme"] = c.noise_scheme;
  j["p"] = c.p;
  j["t"] = c.t;
  j["n_replicates"] = c.n_replicates;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["format"] = to_string(c.format);
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["time_lags"] = c.time_lags;
  j["space_lags"] = c.space_lags;
  j["base_time_lo"] = c.base_time_lo;
  j["base_time_hi"] = c.base_time_hi;
  j["time_stride"] = c.time_stride;
  j["space_stride"] = c.space_stride;
  j["instances"] = c.instances;
  return j;
}

std::string results_name(const ExperimentConfig& c) { return c.format == Format::csv ? "results.csv" : "results.json"; }

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& c) {
  ResultRecord r;
  r.experiment = to_string(c.command);
  r.config_hash = config_hash(c);
  const auto start = std::chrono::steady_clock::now();
  switch (c.command) {
    case Command::verify_kernel: verify_kernel(c, r.rows); break;
    case Command::simulate: simulate(c, r.rows); break;
    case Command::picard_demo: picard_demo(c, r.rows); break;
    case Command::regularity_sweep: regularity_sweep(c, r.rows); break;
    case Command::moments: moments(c, r.rows); break;
    case Command::appendix_check: appendix_check(c, r.rows); break;
  }
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string results_csv(const ResultRecord& r) {
  std::string out = "experiment,config_hash,quantity,index,value,stderr\n";
  for (const auto& row : r.rows) {
    // Quantities with a comma inside their tag are quoted.
    const bool quote = row.quantity.find(',') != std::string::npos;
    out += r.experiment + "," + r.config_hash + "," + (quote ? "\"" + row.quantity + "\"" : row.quantity) + "," +
           std::to_string(row.index) + "," + num(row.value) + "," +
           (std::isnan(row.std_error) ? std::string() : num(row.std_error)) + "\n";
  }
  return out;
}

std::string results_json(const ResultRecord& r) {
  nlohmann::json j;
  j["experiment"] = r.experiment;
  j["config_hash"] = r.config_hash;
  j["results"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json e;
    e["quantity"] = row.quantity;
    e["index"] = row.index;
    e["value"] = std::isfinite(row.value) ? nlohmann::json(row.value) : nlohmann::json();
    e["stderr"] = std::isfinite(row.std_error) ? nlohmann::json(row.std_error) : nlohmann::json();
    j["results"].push_back(e);
  }
  return j.dump(1) + "\n";
}

std::string manifest_json(const ExperimentConfig& c, const ResultRecord& r) {
  nlohmann::json j;
  j["experiment"] = r.experiment;
  j["config_hash"] = r.config_hash;
  j["config"] = config_json(c);
  j["results_file"] = results_name(c);
  j["rows"] = r.rows.size();
  j["wall_time_seconds"] = r.wall_time_seconds;
  return j.dump(2) + "\n";
}

void prepare_output(const ExperimentConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec || ::access(c.out.c_str(), W_OK) != 0) {
    throw ConfigError("output path '" + c.out + "' is not writable");
  }
}

std::string write_outputs(const ExperimentConfig& c, const ResultRecord& r) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw ConfigError("cannot create output directory '" + c.out + "': " + ec.message());
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    f << text;
  };
  const fs::path results = fs::path(c.out) / results_name(c);
  write(results, c.format == Format::csv ? results_csv(r) : results_json(r));
  write(fs::path(c.out) / "manifest.json", manifest_json(c, r));
  return results.string();
}

}  // namespace fracspde::harness
