#include "fracspde/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "fracspde/rng.hpp"

namespace fracspde {

double gronwall_envelope(double theta, double alpha, double beta, double M, double t, std::size_t n) {
  if (!(theta > 0.0)) throw std::invalid_argument("gronwall_envelope: theta must be positive");
  if (alpha < 0.0 || beta < 0.0 || M < 0.0) {
    throw std::invalid_argument("gronwall_envelope: alpha, beta, M must be nonnegative");
  }
  const double x = 2.0 * beta * std::pow(t, theta) / theta;
  const double nn = static_cast<double>(n);
  double tail = 0.0;
  if (M > 0.0) {
    if (x > 0.0) tail = M * std::exp(nn * std::log(x) - std::lgamma(nn + 1.0));
    else if (n == 0) tail = M;
  }
  return 0.5 * (alpha + alpha * std::exp(x) + tail);
}

double gronwall_saturated(double theta, double beta, double M, double t, std::size_t n) {
  const double nn = static_cast<double>(n);
  if (n == 0) return M;
  if (beta == 0.0 || t == 0.0) return 0.0;
  return M * std::exp(nn * std::log(beta * std::tgamma(theta)) + nn * theta * std::log(t) -
                      std::lgamma(nn * theta + 1.0));
}

namespace {

// Weights w_{i,k} with int_0^{s_i} g(s) (s_i - s)^{theta-1} ds = sum_k w_{i,k} g(s_k)
// for g piecewise linear on the mesh s.
std::vector<std::vector<double>> product_weights(const std::vector<double>& s, double theta) {
  const std::size_t K = s.size();
  std::vector<std::vector<double>> w(K);
  // Primitives for the weight (t - s)^{theta-1} on [a, b]:
  //   I0 = int (t-s)^{theta-1} ds, I1 = int (t-s)^{theta} ds.
  for (std::size_t i = 0; i < K; ++i) {
    w[i].assign(i + 1, 0.0);
    const double t = s[i];
    for (std::size_t k = 0; k < i; ++k) {
      const double a = s[k], b = s[k + 1], h = b - a;
      const double A = t - a, B = t - b;
      const double i0 = (std::pow(A, theta) - std::pow(B, theta)) / theta;
      const double i1 = (std::pow(A, theta + 1.0) - std::pow(B, theta + 1.0)) / (theta + 1.0);
      // On [a,b], g = g_k (b - s)/h + g_{k+1} (s - a)/h and
      // (s - a) = A - (t - s), (b - s) = (t - s) - B.
      const double wk = (i1 - B * i0) / h;
      const double wk1 = (A * i0 - i1) / h;
      w[i][k] += wk;
      w[i][k + 1] += wk1;
    }
  }
  return w;
}

double interpolate(const std::vector<double>& s, const std::vector<double>& g, double t) {
  if (t <= s.front()) return g.front();
  if (t >= s.back()) return g.back();
  const auto it = std::upper_bound(s.begin(), s.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - s.begin()) - 1;
  const double f = (t - s[k]) / (s[k + 1] - s[k]);
  return g[k] * (1 - f) + g[k + 1] * f;
}

}  // namespace

GronwallCheck gronwall_property_check(const GronwallParams& p, std::span<const double> t_grid,
                                      std::size_t n_max, std::uint64_t seed, double rel_tol) {
  if (!(p.theta > 0.0)) throw std::invalid_argument("gronwall_property_check: theta must be positive");
  if (p.alpha < 0.0 || p.beta < 0.0 || p.M < 0.0) {
    throw std::invalid_argument("gronwall_property_check: alpha, beta, M must be nonnegative");
  }
  if (t_grid.empty()) throw std::invalid_argument("gronwall_property_check: empty time grid");
  const double T = *std::max_element(t_grid.begin(), t_grid.end());
  if (!(T > 0.0) || *std::min_element(t_grid.begin(), t_grid.end()) < 0.0) {
    throw std::invalid_argument("gronwall_property_check: times must be nonnegative with a positive maximum");
  }

  // Mesh graded like s^2 near the singular endpoint, plus the requested times.
  constexpr std::size_t kMesh = 1200;
  std::vector<double> s;
  for (std::size_t k = 0; k <= kMesh; ++k) {
    const double r = static_cast<double>(k) / kMesh;
    s.push_back(T * r * r);
  }
  s.insert(s.end(), t_grid.begin(), t_grid.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }), s.end());
  const auto w = product_weights(s, p.theta);

  GronwallCheck out{true, 0.0, 0, 0.0, StartKind::constant, {}};
  for (StartKind kind : {StartKind::constant, StartKind::random}) {
    std::vector<double> f(s.size(), p.M);
    if (kind == StartKind::random) {
      auto eng = make_engine(seed, 0x6e);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      constexpr std::size_t kKnots = 16;
      std::vector<double> ks, kv;
      for (std::size_t i = 0; i <= kKnots; ++i) {
        ks.push_back(T * static_cast<double>(i) / kKnots);
        kv.push_back(p.M * u(eng));
      }
      for (std::size_t i = 0; i < s.size(); ++i) f[i] = interpolate(ks, kv, s[i]);
    }
    std::vector<std::vector<double>> table;
    auto record = [&] {
      std::vector<double> row;
      for (double t : t_grid) row.push_back(interpolate(s, f, t));
      table.push_back(std::move(row));
    };
    record();
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::vector<double> next(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += w[i][k] * f[k];
        next[i] = p.alpha + p.beta * acc;
      }
      f = std::move(next);
      record();
      for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double env = gronwall_envelope(p.theta, p.alpha, p.beta, p.M, t_grid[i], n);
        const double val = table.back()[i];
        const double ratio = env > 0.0 ? val / env : (val > 0.0 ? INFINITY : 0.0);
        if (ratio > out.worst_ratio) {
          out.worst_ratio = ratio;
          out.worst_n = n;
          out.worst_t = t_grid[i];
          out.worst_start = kind;
        }
        if (val > env * (1.0 + rel_tol) + 1e-300) out.pass = false;
      }
    }
    out.values.push_back(std::move(table));
  }
  return out;
}

HolderCheck weighted_holder_check(std::span<const double> f, std::span<const double> h,
                                  std::span<const double> mu, double q) {
  if (f.size() != h.size() || f.size() != mu.size()) {
    throw std::invalid_argument("weighted_holder_check: arrays must have equal length");
  }
  if (!(q > 1.0)) throw std::invalid_argument("weighted_holder_check: q must exceed 1");
  double s_fh = 0, s_fqh = 0, s_h = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (mu[i] < 0.0) throw std::invalid_argument("weighted_holder_check: weights must be nonnegative");
    const double hm = std::abs(h[i]) * mu[i];
    s_fh += f[i] * hm;
    s_fqh += std::pow(std::abs(f[i]), q) * hm;
    s_h += hm;
  }
  const double lhs = std::pow(std::abs(s_fh), q);
  const double rhs = s_fqh * std::pow(s_h, q - 1.0);
  return {lhs <= rhs * (1.0 + 1e-12), lhs, rhs};
}

HolderSuite weighted_holder_suite(double q, std::size_t instances, std::uint64_t seed,
                                  std::size_t max_len) {
  auto eng = make_engine(seed, static_cast<std::uint64_t>(q * 1000.0));
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(1, max_len));
  HolderSuite suite{instances, 0, 0.0};
  std::vector<double> f, h, mu;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = len(eng);
    f.resize(n);
    h.resize(n);
    mu.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      f[j] = normal(eng);
      h[j] = normal(eng);
      mu[j] = unif(eng);
    }
    const auto r = weighted_holder_check(f, h, mu, q);
    if (!r.pass) ++suite.violations;
    if (r.rhs > 0.0) suite.worst_ratio = std::max(suite.worst_ratio, r.lhs / r.rhs);
  }
  return suite;
}

}  // namespace fracspde
