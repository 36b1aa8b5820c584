#include "fracspde/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fracspde/error.hpp"
#include "fracspde/fft.hpp"
#include "fracspde/stats.hpp"

namespace fracspde {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 2.0)) {
    throw std::invalid_argument("lambda must lie in (0, 2], got " + std::to_string(lambda));
  }
}

void check_time(double t, const char* name = "t") {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite, got " +
                                std::to_string(t));
  }
}

std::string resolution_message(const KernelSpec& spec, double t) {
  const double scale = std::pow(t, 1.0 / spec.lambda);
  const double L = spec.grid.half_width();
  const double n_min = spec.grid.length() * std::max(8.0, 4.0 / scale);
  std::ostringstream os;
  if (L < 8.0 * scale) {
    os << "grid half-width L = " << L << " is below 8 t^{1/lambda} = " << 8.0 * scale
       << " (lambda = " << spec.lambda << ", t = " << t << ")";
  } else if (static_cast<double>(spec.grid.size()) < n_min) {
    os << "grid size N = " << spec.grid.size() << " is below 2L max(8, 4 t^{-1/lambda}) = "
       << n_min << " (lambda = " << spec.lambda << ", t = " << t << ")";
  }
  return os.str();
}

double riemann_zeta(double s) {
  // Direct sum plus an Euler-Maclaurin tail; s > 1.
  constexpr int n = 64;
  double sum = 0;
  for (int k = 1; k < n; ++k) sum += std::pow(k, -s);
  const double nn = n;
  sum += std::pow(nn, 1 - s) / (s - 1) + 0.5 * std::pow(nn, -s) + s * std::pow(nn, -s - 1) / 12;
  return sum;
}

std::size_t next_pow2(double v) {
  std::size_t n = 2;
  while (static_cast<double>(n) < v) n *= 2;
  return n;
}

// Spectral derivative / multiplier synthesis: returns
// (1/2L) sum_k mult_k e^{2 pi i x_j xi_k} in FFT order for a half-spectrum
// multiplier, assuming Hermitian symmetry.
std::vector<double> synthesize(const Grid1D& grid, std::vector<Complex> half) {
  const double inv_dx = 1.0 / grid.dx();
  for (auto& h : half) h *= inv_dx;
  RealFft fft(grid.size());
  std::vector<double> out(grid.size());
  fft.inverse(half, out);
  return out;
}

}  // namespace

bool resolution_ok(const KernelSpec& spec, double t) noexcept {
  if (!(t > 0.0)) return false;
  const double scale = std::pow(t, 1.0 / spec.lambda);
  const double L = spec.grid.half_width();
  return L >= 8.0 * scale &&
         static_cast<double>(spec.grid.size()) >= spec.grid.length() * std::max(8.0, 4.0 / scale);
}

void check_resolution(const KernelSpec& spec, double t) {
  check_lambda(spec.lambda);
  check_time(t);
  if (!resolution_ok(spec, t)) throw ResolutionError(resolution_message(spec, t));
}

Grid1D adequate_grid(double lambda, double t_min, double t_max, double tol) {
  check_lambda(lambda);
  check_time(t_min, "t_min");
  check_time(t_max, "t_max");
  if (t_max < t_min) std::swap(t_min, t_max);
  if (!(tol > 0.0)) throw std::invalid_argument("adequate_grid: tol must be positive");

  double L = 8.0 * std::pow(t_max, 1.0 / lambda);
  if (lambda == 2.0) {
    const double pref = std::sqrt(kPi / t_min);
    if (pref > tol) L = std::max(L, std::sqrt(t_max * std::log(2.0 * pref / tol)) / kPi);
  } else {
    const double c = std::tgamma(1.0 + lambda) * std::sin(kPi * lambda / 2.0) /
                     (kPi * std::pow(2.0 * kPi, lambda));
    const double need = 2.0 * riemann_zeta(1.0 + lambda) * c * t_max / tol;
    L = std::max(L, std::pow(need, 1.0 / (1.0 + lambda)));
  }
  L = std::ceil(L);

  const double xi_max = std::pow(30.0 / t_min, 1.0 / lambda);
  const double n_heur = 2.0 * L * std::max(8.0, 4.0 * std::pow(t_min, -1.0 / lambda));
  const std::size_t n = next_pow2(std::max(4.0 * L * xi_max, n_heur));
  return Grid1D(L, n);
}

std::vector<double> symbol_exponent(const KernelSpec& spec) {
  check_lambda(spec.lambda);
  const std::size_t half = spec.grid.half_spectrum_size();
  std::vector<double> a(half);
  for (std::size_t k = 0; k < half; ++k) {
    a[k] = std::pow(spec.grid.half_frequency(k), spec.lambda);
  }
  return a;
}

std::vector<double> kernel_symbol(const KernelSpec& spec, double t) {
  check_time(t);
  auto a = symbol_exponent(spec);
  for (auto& v : a) v = std::exp(-t * v);
  return a;
}

KernelValues kernel_values(const KernelSpec& spec, double t) {
  check_resolution(spec, t);
  const auto sym = kernel_symbol(spec, t);
  auto values = even_cosine_synthesis(sym);
  const double scale = 1.0 / spec.grid.length();
  for (auto& v : values) v *= scale;
  return {t, std::move(values)};
}

double kernel_closed_form(double lambda, double t, double x) {
  check_time(t);
  if (lambda == 2.0) return std::sqrt(kPi / t) * std::exp(-kPi * kPi * x * x / t);
  if (lambda == 1.0) return 2.0 * t / (t * t + 4.0 * kPi * kPi * x * x);
  throw std::invalid_argument("kernel_closed_form: closed form known only for lambda = 1 or 2, got " +
                              std::to_string(lambda));
}

double self_similarity_residual(const KernelSpec& spec, double t) {
  const auto gt = kernel_values(spec, t);
  check_resolution(spec, 1.0);
  const auto& grid = spec.grid;

  // Trigonometric interpolation of the time-1 grid kernel onto a mesh R
  // times finer (zero-padded spectrum), then 4-point Lagrange on that mesh.
  std::size_t R = 1;
  while (R < 16 && R * grid.size() < (std::size_t{1} << 22)) R *= 2;
  auto sym = kernel_symbol(spec, 1.0);
  sym.resize(R * grid.size() / 2 + 1, 0.0);
  auto fine = even_cosine_synthesis(sym);
  const double norm = 1.0 / grid.length();
  for (auto& v : fine) v *= norm;

  const auto n = static_cast<std::ptrdiff_t>(fine.size());
  const double dxf = grid.dx() / static_cast<double>(R);
  const double s = std::pow(t, -1.0 / spec.lambda);
  const double limit = grid.half_width() - 2.0 * dxf;
  auto at = [&](std::ptrdiff_t i) { return fine[static_cast<std::size_t>(((i % n) + n) % n)]; };

  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double y = s * grid.offset(j);
    if (std::abs(y) > limit) continue;
    const double u = y / dxf;
    const auto i0 = static_cast<std::ptrdiff_t>(std::floor(u));
    const double f = u - static_cast<double>(i0);
    // Lagrange weights on nodes i0-1, i0, i0+1, i0+2.
    const double w0 = -f * (f - 1) * (f - 2) / 6;
    const double w1 = (f + 1) * (f - 1) * (f - 2) / 2;
    const double w2 = -(f + 1) * f * (f - 2) / 2;
    const double w3 = (f + 1) * f * (f - 1) / 6;
    const double interp = w0 * at(i0 - 1) + w1 * at(i0) + w2 * at(i0 + 1) + w3 * at(i0 + 2);
    worst = std::max(worst, std::abs(gt.values[j] - s * interp));
  }
  return worst;
}

double semigroup_residual(const KernelSpec& spec, double s, double t) {
  const auto gs = kernel_values(spec, s);
  const auto gt = kernel_values(spec, t);
  const auto gst = kernel_values(spec, s + t);
  const std::size_t n = spec.grid.size();
  RealFft fft(n);
  std::vector<Complex> a(fft.half_size()), b(fft.half_size());
  fft.forward(gs.values, a);
  fft.forward(gt.values, b);
  const double dx = spec.grid.dx();
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k] * dx;
  std::vector<double> conv(n);
  fft.inverse(a, conv);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(conv[j] - gst.values[j]));
  return worst;
}

std::vector<double> kernel_derivative(const KernelSpec& spec, int m, double t) {
  if (m < 0 || m > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
  check_resolution(spec, t);
  const auto sym = kernel_symbol(spec, t);
  std::vector<Complex> half(sym.size());
  for (std::size_t k = 0; k < half.size(); ++k) {
    const Complex iw(0.0, 2.0 * kPi * spec.grid.half_frequency(k));
    Complex mult(1.0, 0.0);
    for (int i = 0; i < m; ++i) mult *= iw;
    half[k] = mult * sym[k];
  }
  // An odd multiplier has no real-valued Nyquist component.
  if (m % 2 == 1) half.back() = 0.0;
  return synthesize(spec.grid, std::move(half));
}

DerivativeBound derivative_bound_check(const KernelSpec& spec, int m, double t,
                                       std::span<const double> sweep) {
  std::vector<double> times(sweep.begin(), sweep.end());
  if (times.empty()) times = {t / 2, t, 2 * t};
  if (std::find(times.begin(), times.end(), t) == times.end()) times.push_back(t);

  DerivativeBound out{m, 0.0, times, {}, false};
  for (double tt : times) {
    const auto d = kernel_derivative(spec, m, tt);
    const double sc = std::pow(tt, -1.0 / spec.lambda);
    double c = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double x = spec.grid.offset(j) * sc;
      c = std::max(c, std::abs(d[j]) * std::pow(tt, (1.0 + m) / spec.lambda) * (1.0 + x * x));
    }
    out.sweep_constants.push_back(c);
    if (tt == t) out.constant = c;
  }
  const auto [lo, hi] = std::minmax_element(out.sweep_constants.begin(), out.sweep_constants.end());
  out.pass = *lo > 0.0 && *hi / *lo <= 2.0;
  return out;
}

double l2_constant(double lambda) {
  check_lambda(lambda);
  return 2.0 * std::tgamma(1.0 + 1.0 / lambda) * std::pow(2.0, -1.0 / lambda);
}

L2Scaling l2_time_scaling(const KernelSpec& spec, std::span<const double> times) {
  if (times.size() < 3) throw std::invalid_argument("l2_time_scaling: need at least 3 times");
  L2Scaling out;
  std::vector<double> lx, ly;
  for (double t : times) {
    const auto g = kernel_values(spec, t);
    double s = 0;
    for (double v : g.values) s += v * v;
    const double j = s * spec.grid.dx();
    out.times.push_back(t);
    out.values.push_back(j);
    lx.push_back(std::log(t));
    ly.push_back(std::log(j));
  }
  const auto fit = fit_line(lx, ly);
  out.slope = fit.slope;
  out.constant = std::exp(fit.intercept);
  return out;
}

PowerIntegrability power_integrability_exponent(double lambda, double alpha) {
  check_lambda(lambda);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  PowerIntegrability r;
  r.time_exponent = (1.0 - alpha) / lambda;
  // Stable tails decay like |y|^{-(1+lambda)}; the Gaussian case has no tail.
  r.space_finite = lambda == 2.0 || alpha * (1.0 + lambda) > 1.0;
  r.overall_finite = r.space_finite && r.time_exponent > -1.0;
  return r;
}

std::vector<double> apply_fractional_laplacian(const KernelSpec& spec,
                                               std::span<const double> field) {
  const std::size_t n = spec.grid.size();
  if (field.size() != n) {
    throw MeshMismatch("apply_fractional_laplacian: field has " + std::to_string(field.size()) +
                       " values, grid has " + std::to_string(n));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(field[j])) {
      throw std::invalid_argument("apply_fractional_laplacian: non-finite value at index " +
                                  std::to_string(j));
    }
  }
  const auto a = symbol_exponent(spec);
  RealFft fft(n);
  std::vector<Complex> spec_half(fft.half_size());
  fft.forward(field, spec_half);
  for (std::size_t k = 0; k < a.size(); ++k) spec_half[k] *= -a[k];
  std::vector<double> out(n);
  fft.inverse(spec_half, out);
  return out;
}

}  // namespace fracspde
