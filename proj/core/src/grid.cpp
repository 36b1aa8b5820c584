#include "fracspde/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracspde {

Grid1D::Grid1D(double half_width, std::size_t n_points)
    : half_width_(half_width), n_points_(n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half-width L must be positive and finite, got " +
                                std::to_string(half_width));
  }
  if (n_points < 2 || n_points % 2 != 0) {
    throw std::invalid_argument("grid point count N must be an even integer >= 2, got " +
                                std::to_string(n_points));
  }
}

double Grid1D::position(std::size_t j) const noexcept {
  return -half_width_ + static_cast<double>(j) * dx();
}

double Grid1D::offset(std::size_t j) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(n_points_);
  auto i = static_cast<std::ptrdiff_t>(j);
  if (i >= n / 2) i -= n;
  return static_cast<double>(i) * dx();
}

double Grid1D::frequency(std::size_t k) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(n_points_);
  auto i = static_cast<std::ptrdiff_t>(k);
  if (i >= n / 2) i -= n;
  return static_cast<double>(i) / length();
}

}  // namespace fracspde
