#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracspde/solver.hpp"

namespace fracspde {

struct Exponents {
  double alpha_max;  // time
  double beta_max;   // space
};

/// (min(rho/lambda, (lambda-1)/(2 lambda)), min(rho, (lambda-1)/2)).
Exponents theoretical_exponents(double lambda, double rho);
/// Interior-time exponents ((lambda-1)/(2 lambda), (lambda-1)/2).
Exponents remark_exponents(double lambda);

struct MomentEstimate {
  double p;
  double t;
  std::size_t step;
  double sup_over_grid;
  std::size_t argmax;
  std::vector<double> values;      // E|u(t, x_j)|^p
  std::vector<double> std_errors;
  std::size_t n_replicates;
};

/// Replicate r uses noise seed derive_seed(seed, r, 0) and, for random
/// initial data, initial seed derive_seed(seed, r, 1).
MomentEstimate estimate_moments(const SimConfig& config, double p, double t,
                                std::size_t n_replicates, std::uint64_t seed);
/// Several p from the same replicates.
std::vector<MomentEstimate> estimate_moments(const SimConfig& config, std::span<const double> ps,
                                             double t, std::size_t n_replicates, std::uint64_t seed);

enum class Direction { time, space };
std::string to_string(Direction d);

struct IncrementOptions {
  /// Base times are mesh times in [base_time_lo, base_time_hi]. Negative
  /// values select the defaults T/2 and T - max_lag (time direction) or T
  /// (space direction).
  double base_time_lo = -1.0;
  double base_time_hi = -1.0;
  std::size_t time_stride = 1;   // steps between base times
  std::size_t space_stride = 1;  // cells between base positions
};

struct IncrementTable {
  Direction direction;
  double p;
  double lambda;
  double rho;
  std::vector<double> lags;
  std::vector<double> moments;     // sup over base points of E|increment|^p
  std::vector<double> std_errors;  // of the maximizing base point
  std::size_t n_replicates;
  std::size_t n_base_points;
};

/// Lags are in physical units and must be multiples of dt (time) or dx
/// (space). All lags of one replicate share the trajectory.
IncrementTable increment_table(const SimConfig& config, Direction direction, double p,
                               std::span<const double> lags, std::size_t n_replicates,
                               std::uint64_t seed, const IncrementOptions& options = {});
std::vector<IncrementTable> increment_tables(const SimConfig& config, Direction direction,
                                             std::span<const double> ps,
                                             std::span<const double> lags,
                                             std::size_t n_replicates, std::uint64_t seed,
                                             const IncrementOptions& options = {});

struct HolderFit {
  Direction direction;
  double p;
  double estimated_gamma;
  double std_error;
  double theoretical_bound;
  double log_constant;
  std::size_t n_points;
};

/// Weighted least squares of log moment on log lag; gamma = slope / p.
HolderFit fit_holder_exponent(const IncrementTable& table);

}  // namespace fracspde
