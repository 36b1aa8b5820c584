#include "config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fracspde/coefficients.hpp>
#include <fracspde/initial_condition.hpp>
#include "json.hpp"

namespace fracspde::harness {

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::verify_kernel, "verify-kernel"},   {Command::simulate, "simulate"},
    {Command::picard_demo, "picard-demo"},       {Command::regularity_sweep, "regularity-sweep"},
    {Command::moments, "moments"},               {Command::appendix_check, "appendix-check"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const RawValue& v) { return v.origin.empty() ? "" : " (" + v.origin + ")"; }

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

double to_double(const std::string& key, const RawValue& v, const std::string& text) {
  double out = 0;
  const char* end = text.data() + text.size();
  auto r = std::from_chars(text.data(), end, out);
  if (text.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(out)) {
    throw ConfigError("malformed numeric value '" + text + "' for key '" + key + "'" + where(v));
  }
  return out;
}

long to_long(const std::string& key, const RawValue& v, const std::string& text) {
  long out = 0;
  const char* end = text.data() + text.size();
  auto r = std::from_chars(text.data(), end, out);
  if (text.empty() || r.ec != std::errc() || r.ptr != end) {
    throw ConfigError("malformed integer value '" + text + "' for key '" + key + "'" + where(v));
  }
  return out;
}

std::size_t to_count(const std::string& key, const RawValue& v) {
  const long n = to_long(key, v, trim(v.text));
  if (n < 0) throw ConfigError("key '" + key + "' must be nonnegative, got " + v.text + where(v));
  return static_cast<std::size_t>(n);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string join(const auto& values, auto fmt) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += fmt(values[i]);
  }
  return s;
}

// Values a command uses when the user gives none.
RawConfig profile(Command c) {
  RawConfig d = {
      {"lambda", {"2", "default"}},          {"rho", {"1", "default"}},
      {"preset", {"additive", "default"}},   {"sigma0", {"1", "default"}},
      {"grid_n", {"1024", "default"}},       {"grid_l", {"16", "default"}},
      {"dt", {"0.001", "default"}},          {"horizon", {"0.5", "default"}},
      {"initial", {"constant", "default"}},  {"initial_amplitude", {"0", "default"}},
      {"noise_scheme", {"left_point", "default"}},
      {"p", {"2", "default"}},               {"n_replicates", {"100", "default"}},
      {"out", {"results", "default"}},       {"format", {"csv", "default"}},
      {"tol", {"1e-06", "default"}},         {"max_iter", {"15", "default"}},
      {"time_lags", {"", "default"}},        {"space_lags", {"", "default"}},
      {"base_time_lo", {"-1", "default"}},   {"base_time_hi", {"-1", "default"}},
      {"time_stride", {"1", "default"}},     {"space_stride", {"1", "default"}},
      {"instances", {"10000", "default"}},   {"t", {"", "default"}},
  };
  switch (c) {
    case Command::verify_kernel:
      d["t"].text = "1";
      break;
    case Command::picard_demo:
      d["preset"].text = "affine";
      d["initial"].text = "smooth_cosine";
      d["initial_amplitude"].text = "1";
      d["grid_l"].text = "8";
      d["grid_n"].text = "64";
      d["dt"].text = "0.004";
      break;
    case Command::regularity_sweep:
      d["grid_l"].text = "1";
      d["grid_n"].text = "2048";
      d["dt"].text = "0.004";
      d["horizon"].text = "0.512";
      d["noise_scheme"].text = "exact_variance";
      d["initial"].text = "smooth_cosine";
      d["initial_amplitude"].text = "1";
      d["n_replicates"].text = "400";
      d["time_lags"].text = "1,2,4,8,16,32";
      d["space_lags"].text = "3,6,12,24,48,96";
      d["time_stride"].text = "16";
      d["space_stride"].text = "256";
      break;
    default:
      break;
  }
  return d;
}

bool on_mesh(double t, double dt) {
  const double m = std::round(t / dt);
  return m >= 0 && std::abs(m * dt - t) <= 1e-9 * std::max(1.0, t);
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [k, name] : kCommands)
    if (k == c) return name;
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& [k, n] : kCommands)
    if (n == name) return k;
  throw ConfigError("unknown command '" + name +
                    "' (expected verify-kernel, simulate, picard-demo, regularity-sweep, moments or appendix-check)");
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "command", "lambda", "rho", "preset", "sigma0", "grid_n", "grid_l", "dt", "horizon",
      "initial", "initial_amplitude", "noise_scheme", "p", "t", "n_replicates", "seed", "out",
      "format", "tol", "max_iter", "time_lags", "space_lags", "base_time_lo", "base_time_hi",
      "time_stride", "space_stride", "instances"};
  return keys;
}

RawConfig parse_key_value(const std::string& text, const std::string& source) {
  RawConfig out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto& keys = known_keys();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string origin = source + " line " + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value' at " + origin);
    const std::string key = trim(line.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "' at " + origin);
    }
    out[key] = {trim(line.substr(eq + 1)), origin};
  }
  return out;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  if (path.size() < 5 || path.substr(path.size() - 5) != ".json") return parse_key_value(ss.str(), path);

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  if (!j.contains("config") || !j["config"].is_object()) {
    throw ConfigError("'" + path + "' has no \"config\" object");
  }
  RawConfig out;
  const auto& keys = known_keys();
  for (const auto& [key, value] : j["config"].items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "' in " + path);
    }
    auto scalar = [](const nlohmann::json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
      if (v.is_number()) return format_double(v.get<double>());
      return v.dump();
    };
    std::string text;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) text += (i ? "," : "") + scalar(value[i]);
    } else {
      text = scalar(value);
    }
    out[key] = {text, path};
  }
  return out;
}

std::size_t ExperimentConfig::n_steps() const { return static_cast<std::size_t>(std::lround(horizon / dt)); }

SimConfig ExperimentConfig::sim() const {
  SimConfig s;
  s.lambda = lambda;
  s.grid = Grid1D(grid_l, grid_n);
  s.dt = dt;
  s.n_steps = n_steps();
  s.coefficients = make_preset(preset, sigma0);
  s.initial = {parse_initial_kind(initial), initial_amplitude, rho};
  s.seed = seed;
  s.noise_scheme = parse_noise_scheme(noise_scheme);
  return s;
}

ExperimentConfig resolve(const RawConfig& raw) {
  auto cmd_it = raw.find("command");
  if (cmd_it == raw.end()) throw ConfigError("no command given");
  ExperimentConfig c;
  c.command = parse_command(trim(cmd_it->second.text));
  if (!raw.contains("seed")) throw ConfigError("missing required key 'seed' (runs are never seeded from entropy)");

  RawConfig all = profile(c.command);
  for (const auto& [k, v] : raw) all[k] = v;

  auto num = [&](const char* key) { return to_double(key, all.at(key), trim(all.at(key).text)); };
  auto str = [&](const char* key) { return trim(all.at(key).text); };
  auto count = [&](const char* key) { return to_count(key, all.at(key)); };
  auto doubles = [&](const char* key) {
    std::vector<double> out;
    const auto text = str(key);
    if (!text.empty())
      for (const auto& item : split_list(text)) out.push_back(to_double(key, all.at(key), item));
    return out;
  };
  auto longs = [&](const char* key) {
    std::vector<long> out;
    const auto text = str(key);
    if (!text.empty())
      for (const auto& item : split_list(text)) out.push_back(to_long(key, all.at(key), item));
    return out;
  };

  c.lambda = num("lambda");
  c.rho = num("rho");
  c.preset = str("preset");
  c.sigma0 = num("sigma0");
  c.grid_n = count("grid_n");
  c.grid_l = num("grid_l");
  c.dt = num("dt");
  c.horizon = num("horizon");
  c.initial = str("initial");
  c.initial_amplitude = num("initial_amplitude");
  c.noise_scheme = str("noise_scheme");
  c.p = doubles("p");
  c.t = doubles("t");
  c.n_replicates = count("n_replicates");
  {
    const auto& v = all.at("seed");
    const auto text = trim(v.text);
    const bool hex = text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0;
    const char* b = text.data() + (hex ? 2 : 0);
    const char* e = text.data() + text.size();
    auto r = std::from_chars(b, e, c.seed, hex ? 16 : 10);
    if (b == e || r.ec != std::errc() || r.ptr != e) {
      throw ConfigError("malformed seed '" + text + "'" + where(v));
    }
  }
  c.out = str("out");
  {
    const auto f = str("format");
    if (f == "csv") {
      c.format = Format::csv;
    } else if (f == "json") {
      c.format = Format::json;
    } else {
      throw ConfigError("format must be csv or json, got '" + f + "'" + where(all.at("format")));
    }
  }
  c.tol = num("tol");
  c.max_iter = count("max_iter");
  c.time_lags = longs("time_lags");
  c.space_lags = longs("space_lags");
  c.base_time_lo = num("base_time_lo");
  c.base_time_hi = num("base_time_hi");
  c.time_stride = count("time_stride");
  c.space_stride = count("space_stride");
  c.instances = count("instances");

  if (c.command == Command::simulate || c.command == Command::moments) {
    if (c.t.empty()) c.t = {c.horizon};
  }

  // Cross-field checks.
  if (!(c.lambda > 1.0 && c.lambda <= 2.0)) {
    throw ConfigError("lambda = " + format_double(c.lambda) + " is outside the admissible range (1, 2]");
  }
  if (!(c.rho > 0.0 && c.rho <= 1.0)) throw ConfigError("rho must lie in (0, 1], got " + format_double(c.rho));
  try {
    make_preset(c.preset, c.sigma0);
    const auto kind = parse_initial_kind(c.initial);
    if (c.rho != 1.0 && kind != InitialKind::hoelder_rough) {
      throw ConfigError("rho = " + format_double(c.rho) + " requires initial = hoelder_rough");
    }
    parse_noise_scheme(c.noise_scheme);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.grid_n < 8 || c.grid_n % 2) throw ConfigError("grid_n must be even and at least 8");
  if (!(c.grid_l > 0)) throw ConfigError("grid_l must be positive");
  if (!(c.dt > 0)) throw ConfigError("dt must be positive");
  if (!(c.horizon > 0) || !on_mesh(c.horizon, c.dt) || c.n_steps() == 0) {
    throw ConfigError("horizon " + format_double(c.horizon) + " is not a positive multiple of dt " +
                      format_double(c.dt));
  }
  if (c.p.empty()) throw ConfigError("p needs at least one value");
  for (double p : c.p)
    if (!(p >= 1.0)) throw ConfigError("moment order p must be at least 1, got " + format_double(p));
  if (c.out.empty()) throw ConfigError("out must name a directory");
  if (!(c.tol > 0)) throw ConfigError("tol must be positive");

  switch (c.command) {
    case Command::verify_kernel:
      if (c.t.empty()) throw ConfigError("verify-kernel needs at least one time t");
      for (double t : c.t)
        if (!(t > 0)) throw ConfigError("kernel times must be positive, got " + format_double(t));
      break;
    case Command::simulate:
    case Command::moments:
      for (double t : c.t) {
        if (!(t >= 0 && t <= c.horizon * (1 + 1e-12)) || !on_mesh(t, c.dt)) {
          throw ConfigError("t = " + format_double(t) + " is not a mesh time in [0, horizon]");
        }
      }
      if (c.command == Command::moments && c.n_replicates < 2) {
        throw ConfigError("moments needs n_replicates >= 2");
      }
      break;
    case Command::regularity_sweep:
      if (c.n_replicates < 2) throw ConfigError("regularity-sweep needs n_replicates >= 2");
      if (c.time_lags.size() < 4 || c.space_lags.size() < 4) {
        throw ConfigError("regularity-sweep needs at least 4 time_lags and 4 space_lags");
      }
      for (auto lags : {&c.time_lags, &c.space_lags}) {
        for (std::size_t i = 0; i < lags->size(); ++i) {
          if ((*lags)[i] <= 0 || (i && (*lags)[i] <= (*lags)[i - 1])) {
            throw ConfigError("lags must be positive and strictly increasing");
          }
        }
      }
      if (c.time_lags.back() > static_cast<long>(c.n_steps())) {
        throw ConfigError("largest time lag exceeds the number of steps");
      }
      if (c.space_lags.back() >= static_cast<long>(c.grid_n)) {
        throw ConfigError("largest space lag must be below grid_n");
      }
      if (c.time_stride == 0 || c.space_stride == 0) throw ConfigError("strides must be positive");
      break;
    case Command::picard_demo:
      if (c.max_iter == 0) throw ConfigError("max_iter must be positive");
      break;
    case Command::appendix_check:
      if (c.instances == 0) throw ConfigError("instances must be positive");
      break;
  }
  return c;
}

std::vector<std::pair<std::string, std::string>> canonical_entries(const ExperimentConfig& c) {
  auto d = [](double v) { return format_double(v); };
  auto l = [](long v) { return std::to_string(v); };
  return {
      {"command", to_string(c.command)},
      {"lambda", d(c.lambda)},
      {"rho", d(c.rho)},
      {"preset", c.preset},
      {"sigma0", d(c.sigma0)},
      {"grid_n", std::to_string(c.grid_n)},
      {"grid_l", d(c.grid_l)},
      {"dt", d(c.dt)},
      {"horizon", d(c.horizon)},
      {"initial", c.initial},
      {"initial_amplitude", d(c.initial_amplitude)},
      {"noise_scheme", c.noise_scheme},
      {"p", join(c.p, d)},
      {"t", join(c.t, d)},
      {"n_replicates", std::to_string(c.n_replicates)},
      {"seed", std::to_string(c.seed)},
      {"out", c.out},
      {"format", to_string(c.format)},
      {"tol", d(c.tol)},
      {"max_iter", std::to_string(c.max_iter)},
      {"time_lags", join(c.time_lags, l)},
      {"space_lags", join(c.space_lags, l)},
      {"base_time_lo", d(c.base_time_lo)},
      {"base_time_hi", d(c.base_time_hi)},
      {"time_stride", std::to_string(c.time_stride)},
      {"space_stride", std::to_string(c.space_stride)},
      {"instances", std::to_string(c.instances)},
  };
}

std::string config_hash(const ExperimentConfig& c) {
  std::string text;
  for (const auto& [k, v] : canonical_entries(c)) {
    if (k == "out" || k == "format") continue;
    text += k + " = " + v + "\n";
  }
  return git_blob_sha1(text);
}

std::string git_blob_sha1(const std::string& content) {
  const std::string data = "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1) {
    throw std::runtime_error("SHA-1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace fracspde::harness
