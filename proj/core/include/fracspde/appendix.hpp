#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fracspde {

/// 1/2 (alpha + alpha exp(2 beta t^theta / theta) + M / n! (2 beta t^theta / theta)^n).
double gronwall_envelope(double theta, double alpha, double beta, double M, double t, std::size_t n);

struct GronwallParams {
  double theta;
  double alpha;
  double beta;
  double M;
};

enum class StartKind { constant, random };

struct GronwallCheck {
  bool pass;
  double worst_ratio;    // max over (n, t) of f_n(t) / envelope
  std::size_t worst_n;
  double worst_t;
  StartKind worst_start;
  /// f_n at the requested times, per start kind: values[s][n][i], n = 0..n_max.
  std::vector<std::vector<std::vector<double>>> values;
};

/// Iterates f_n(t) = alpha + beta int_0^t f_{n-1}(s) (t-s)^{theta-1} ds
/// exactly (the hypothesis inequality saturated), from f_0 = M and from a
/// seeded random piecewise-linear f_0 in [0, M], and compares against
/// gronwall_envelope at every time in t_grid for n = 1..n_max.
/// The integral is a product rule: f_{n-1} is piecewise linear on a mesh
/// graded towards s = 0 and integrated exactly against the singular weight.
GronwallCheck gronwall_property_check(const GronwallParams& params, std::span<const double> t_grid,
                                      std::size_t n_max, std::uint64_t seed,
                                      double rel_tol = 1e-4);

/// Exact iterate for alpha = 0 and f_0 = M: M (beta Gamma(theta))^n t^{n theta} / Gamma(n theta + 1).
double gronwall_saturated(double theta, double beta, double M, double t, std::size_t n);

struct HolderCheck {
  bool pass;
  double lhs;
  double rhs;
};

/// |sum f |h| mu|^q <= (sum |f|^q |h| mu) (sum |h| mu)^{q-1}.
HolderCheck weighted_holder_check(std::span<const double> f, std::span<const double> h,
                                  std::span<const double> mu, double q);

struct HolderSuite {
  std::size_t instances;
  std::size_t violations;
  double worst_ratio;  // max lhs / rhs
};

/// Random instances: f, h standard Gaussian, mu uniform on [0, 1], length
/// uniform in [1, max_len].
HolderSuite weighted_holder_suite(double q, std::size_t instances, std::uint64_t seed,
                                  std::size_t max_len = 64);

}  // namespace fracspde
