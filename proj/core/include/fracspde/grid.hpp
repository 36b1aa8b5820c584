#pragma once

#include <cstddef>

namespace fracspde {

/// Periodic truncation [-L, L) of the real line sampled at N points.
///
/// Positions come in two orderings. `position(j)` is the physical node
/// x_j = -L + j dx used for fields. `offset(j)` is the signed distance of
/// index j from the origin in FFT order (j < N/2 -> j dx, else (j - N) dx),
/// which is how kernels are stored.
///
/// Frequencies follow the e^{2 pi i x xi} convention: xi_k = k / (2L).
class Grid1D {
 public:
  Grid1D(double half_width, std::size_t n_points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return n_points_; }
  double dx() const noexcept { return 2.0 * half_width_ / static_cast<double>(n_points_); }
  double length() const noexcept { return 2.0 * half_width_; }

  double position(std::size_t j) const noexcept;
  double offset(std::size_t j) const noexcept;

  /// Frequency of DFT index k in FFT order (k = N/2 maps to -N/(4L)).
  double frequency(std::size_t k) const noexcept;
  /// Nonnegative frequency of half-spectrum index k in [0, N/2].
  double half_frequency(std::size_t k) const noexcept {
    return static_cast<double>(k) / length();
  }
  std::size_t half_spectrum_size() const noexcept { return n_points_ / 2 + 1; }
  double nyquist() const noexcept { return half_frequency(n_points_ / 2); }

  bool operator==(const Grid1D&) const = default;

 private:
  double half_width_;
  std::size_t n_points_;
};

}  // namespace fracspde
