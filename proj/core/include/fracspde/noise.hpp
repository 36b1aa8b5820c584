#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fracspde/grid.hpp"

namespace fracspde {

/// Space-time white-noise increments Delta W_{m,j}, one row per time step,
/// each entry N(0, dt dx).
struct NoiseField {
  Grid1D grid;
  double dt;
  std::size_t n_steps;
  std::vector<double> increments;  // row-major, n_steps x N
  std::uint64_t seed;

  std::span<const double> row(std::size_t m) const {
    return {increments.data() + m * grid.size(), grid.size()};
  }
  double variance() const noexcept { return dt * grid.dx(); }
};

/// On-demand generator of the same increments as sample_noise. Row m is
/// drawn from an engine keyed by (seed, m), so rows can be produced in any
/// order or concurrently.
class NoiseStream {
 public:
  NoiseStream(Grid1D grid, double dt, std::uint64_t seed);

  const Grid1D& grid() const noexcept { return grid_; }
  double dt() const noexcept { return dt_; }
  std::uint64_t seed() const noexcept { return seed_; }
  double variance() const noexcept { return dt_ * grid_.dx(); }

  void fill(std::size_t step, std::span<double> out) const;

 private:
  Grid1D grid_;
  double dt_;
  std::uint64_t seed_;
};

NoiseField sample_noise(const Grid1D& grid, double dt, std::size_t n_steps, std::uint64_t seed);

/// Sums 2x2 blocks (two steps by two cells): the noise seen by a mesh with
/// doubled dt and dx. Needs even n_steps and N/2 even.
NoiseField coarsen(const NoiseField& fine);

/// E[W(t,x) W(s,y)] for the Brownian sheet.
double sheet_covariance(double s, double t, double x, double y);

struct SheetPoint {
  double t;
  double x;
};

struct CovarianceEntry {
  std::size_t a;
  std::size_t b;
  SheetPoint pa;  // snapped to the mesh
  SheetPoint pb;
  double analytic;
  double empirical;
  double std_error;
};

/// Monte Carlo estimate of the sheet covariance at every pair (a <= b) of
/// points. W(t,x) is rebuilt from increments as a signed cumulative sum from
/// the spatial origin. Points are snapped to the nearest mesh node.
std::vector<CovarianceEntry> empirical_sheet_covariance(const Grid1D& grid, double dt,
                                                        std::size_t n_steps,
                                                        std::size_t n_replicates,
                                                        std::span<const SheetPoint> points,
                                                        std::uint64_t seed);

}  // namespace fracspde
