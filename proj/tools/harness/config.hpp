#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <fracspde/solver.hpp>

namespace fracspde::harness {

/// Validation failure in the experiment description; exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { verify_kernel, simulate, picard_demo, regularity_sweep, moments, appendix_check };
enum class Format { csv, json };

std::string to_string(Command c);
Command parse_command(const std::string& name);
std::string to_string(Format f);

/// One key as written by the user, before typing.
struct RawValue {
  std::string text;
  std::string origin;  // "run.cfg line 4", "--dt", ...
};

/// Later layers override earlier ones.
using RawConfig = std::map<std::string, RawValue>;

/// Keys accepted in config files, e.g. "grid_n". Flags use dashes instead.
const std::vector<std::string>& known_keys();

/// `key = value` lines, `#` starts a comment. A file whose name ends in
/// .json is read as a manifest and its "config" object is used.
RawConfig read_config_file(const std::string& path);
RawConfig parse_key_value(const std::string& text, const std::string& source);

struct ExperimentConfig {
  Command command = Command::simulate;
  double lambda = 2.0;
  double rho = 1.0;
  std::string preset = "additive";
  double sigma0 = 1.0;
  std::size_t grid_n = 1024;
  double grid_l = 16.0;
  double dt = 1e-3;
  double horizon = 0.5;
  std::string initial = "constant";
  double initial_amplitude = 0.0;
  std::string noise_scheme = "left_point";
  std::vector<double> p = {2.0};
  std::vector<double> t;  // evaluation times
  std::size_t n_replicates = 100;
  std::uint64_t seed = 0;
  std::string out = "results";
  Format format = Format::csv;
  double tol = 1e-6;
  std::size_t max_iter = 15;
  std::vector<long> time_lags;   // in steps
  std::vector<long> space_lags;  // in cells
  double base_time_lo = -1.0;
  double base_time_hi = -1.0;
  std::size_t time_stride = 1;
  std::size_t space_stride = 1;
  std::size_t instances = 10000;

  std::size_t n_steps() const;
  SimConfig sim() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Types every key, fills the command's defaults and validates the result.
/// Throws ConfigError naming the key and where it came from.
ExperimentConfig resolve(const RawConfig& raw);

/// Resolved config as ordered (key, value) pairs with every default explicit.
std::vector<std::pair<std::string, std::string>> canonical_entries(const ExperimentConfig& c);

/// git blob SHA-1 of the canonical entries (output location excluded).
std::string config_hash(const ExperimentConfig& c);

/// git's object id for a blob: SHA-1 of "blob <size>\0" + content.
std::string git_blob_sha1(const std::string& content);

}  // namespace fracspde::harness
