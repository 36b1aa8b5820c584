#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracspde/grid.hpp"

namespace fracspde {

struct KernelSpec {
  double lambda;
  Grid1D grid;
};

/// G_lambda(t, .) sampled on the grid, stored in FFT order: values[j] is the
/// kernel at signed offset grid.offset(j), so values[0] is the peak.
struct KernelValues {
  double t;
  std::vector<double> values;
};

/// Throws ResolutionError unless L >= 8 t^{1/lambda} and
/// N >= 2L max(8, 4 t^{-1/lambda}).
void check_resolution(const KernelSpec& spec, double t);
bool resolution_ok(const KernelSpec& spec, double t) noexcept;

/// Smallest power-of-two grid that resolves every t in [t_min, t_max] with
/// periodization (wrap-around) error below `tol` and spectral cut-off
/// e^{-t xi_max^lambda} below e^{-30}.
Grid1D adequate_grid(double lambda, double t_min, double t_max, double tol = 1e-8);

/// Symbol e^{-t |xi|^lambda} on the nonnegative half spectrum (k = 0..N/2).
std::vector<double> kernel_symbol(const KernelSpec& spec, double t);

/// |xi_k|^lambda on the half spectrum.
std::vector<double> symbol_exponent(const KernelSpec& spec);

KernelValues kernel_values(const KernelSpec& spec, double t);

/// sqrt(pi/t) exp(-pi^2 x^2 / t) for lambda = 2, 2t / (t^2 + 4 pi^2 x^2) for lambda = 1.
double kernel_closed_form(double lambda, double t, double x);

/// sup_j | G(t, x_j) - t^{-1/lambda} G(1, t^{-1/lambda} x_j) |, with the time-1
/// kernel interpolated trigonometrically (zero-padded spectrum) followed by
/// 4-point Lagrange on the refined mesh. Only nodes whose rescaled position
/// stays inside the sampled box are compared.
double self_similarity_residual(const KernelSpec& spec, double t);

/// sup_j | dx (G(s) * G(t))_j - G(s+t)_j | with periodic discrete convolution.
double semigroup_residual(const KernelSpec& spec, double s, double t);

struct DerivativeBound {
  int order;
  double constant;                 // C_m at the requested t
  std::vector<double> sweep_times;
  std::vector<double> sweep_constants;
  bool pass;                       // max/min over the sweep <= 2
};

/// Spectral m-th derivative of the kernel (FFT order), m in {0, 1, 2}.
std::vector<double> kernel_derivative(const KernelSpec& spec, int m, double t);

/// Smallest C_m with |d^m G(t,x_j)| <= C_m t^{-(1+m)/lambda} / (1 + t^{-2/lambda} x_j^2)
/// at all grid points, evaluated over `sweep` (default {t/2, t, 2t}).
DerivativeBound derivative_bound_check(const KernelSpec& spec, int m, double t,
                                       std::span<const double> sweep = {});

struct L2Scaling {
  double slope;
  double constant;
  std::vector<double> times;
  std::vector<double> values;  // J(t) = dx sum_j G(t, x_j)^2
};

L2Scaling l2_time_scaling(const KernelSpec& spec, std::span<const double> times);

/// Integral of exp(-2|xi|^lambda) over the real line, the J(t) prefactor.
double l2_constant(double lambda);

struct PowerIntegrability {
  double time_exponent;  // (1 - alpha) / lambda
  bool space_finite;
  bool overall_finite;
};

PowerIntegrability power_integrability_exponent(double lambda, double alpha);

/// Spectral fractional Laplacian: multiply each mode by -|xi_k|^lambda.
std::vector<double> apply_fractional_laplacian(const KernelSpec& spec,
                                               std::span<const double> field);

}  // namespace fracspde
