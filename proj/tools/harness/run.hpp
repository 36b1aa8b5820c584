#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace fracspde::harness {

struct ResultRow {
  std::string quantity;
  long index;
  double value;
  double std_error;  // NaN when the quantity is deterministic
};

struct ResultRecord {
  std::string experiment;
  std::string config_hash;
  std::vector<ResultRow> rows;
  double wall_time_seconds = 0.0;
};

/// Dispatches to the experiment pipeline. Library exceptions propagate.
ResultRecord run_experiment(const ExperimentConfig& config);

/// Long-format table: experiment,config_hash,quantity,index,value,stderr.
std::string results_csv(const ResultRecord& r);
std::string results_json(const ResultRecord& r);
/// Resolved config, hash, results file name and wall time.
std::string manifest_json(const ExperimentConfig& c, const ResultRecord& r);

/// Creates the output directory and checks it is writable. Throws ConfigError.
void prepare_output(const ExperimentConfig& c);

/// Writes <out>/results.{csv,json} and <out>/manifest.json. Returns the
/// results path.
std::string write_outputs(const ExperimentConfig& c, const ResultRecord& r);

}  // namespace fracspde::harness
