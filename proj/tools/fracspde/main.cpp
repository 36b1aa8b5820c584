#include <cstdio>
#include <map>
#include <string>

#include <fracspde/error.hpp>

#include "CLI11.hpp"
#include "config.hpp"
#include "run.hpp"

using namespace fracspde::harness;

namespace {

std::string flag_for(const std::string& key) {
  std::string f = "--" + key;
  for (auto& ch : f)
    if (ch == '_') ch = '-';
  return f;
}

const std::map<std::string, std::string> kHelp = {
    {"lambda", "stability index in (1, 2]"},
    {"rho", "Hoelder exponent of hoelder_rough initial data"},
    {"preset", "coefficients: additive, affine, bounded_smooth, zero, constant_forcing"},
    {"sigma0", "noise level of the additive and constant_forcing presets"},
    {"grid_n", "grid points"},
    {"grid_l", "half-width L of the periodic box [-L, L)"},
    {"dt", "time step"},
    {"horizon", "final time T"},
    {"initial", "initial data: constant, smooth_cosine, hoelder_rough, random_field"},
    {"initial_amplitude", "initial data amplitude"},
    {"noise_scheme", "left_point or exact_variance"},
    {"p", "moment orders, comma separated"},
    {"t", "evaluation times, comma separated"},
    {"n_replicates", "Monte Carlo replicates"},
    {"seed", "master seed (required)"},
    {"out", "output directory"},
    {"format", "csv or json"},
    {"tol", "Picard stopping distance"},
    {"max_iter", "Picard iteration cap"},
    {"time_lags", "temporal lags in steps, comma separated"},
    {"space_lags", "spatial lags in cells, comma separated"},
    {"base_time_lo", "earliest base time of increments (negative: default)"},
    {"base_time_hi", "latest base time of increments (negative: default)"},
    {"time_stride", "steps between base times"},
    {"space_stride", "cells between base positions"},
    {"instances", "random instances per q in appendix-check"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracspde: stochastic fractional heat equation experiments"};
  app.require_subcommand(0, 1);
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, std::vector<CLI::Option*>> options;

  auto add_flags = [&](CLI::App* a) {
    a->add_option("--config", config_path, "key = value file or manifest.json");
    for (const auto& key : known_keys()) {
      if (key == "command") continue;
      options[key].push_back(a->add_option(flag_for(key), values[key], kHelp.at(key)));
    }
  };
  add_flags(&app);
  std::vector<CLI::App*> subs;
  for (const char* name : {"verify-kernel", "simulate", "picard-demo", "regularity-sweep", "moments", "appendix-check"}) {
    auto* s = app.add_subcommand(name, std::string("run ") + name);
    add_flags(s);
    subs.push_back(s);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    RawConfig raw;
    if (!config_path.empty()) raw = read_config_file(config_path);
    for (auto* s : subs)
      if (s->parsed()) raw["command"] = {s->get_name(), "command line"};
    for (const auto& [key, opts] : options) {
      for (auto* o : opts)
        if (o->count() > 0) raw[key] = {values[key], flag_for(key)};
    }
    const auto config = resolve(raw);
    prepare_output(config);
    const auto record = run_experiment(config);
    const auto path = write_outputs(config, record);
    std::printf("%s: %zu rows -> %s (config %s, %.2f s)\n", record.experiment.c_str(), record.rows.size(),
                path.c_str(), record.config_hash.c_str(), record.wall_time_seconds);
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const fracspde::ConvergenceError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const fracspde::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const fracspde::ResolutionError& e) {
    std::fprintf(stderr, "resolution error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
