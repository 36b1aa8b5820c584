#include "fracspde/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "fracspde/error.hpp"
#include "fracspde/parallel.hpp"
#include "fracspde/rng.hpp"
#include "fracspde/stats.hpp"

namespace fracspde {

NoiseStream::NoiseStream(Grid1D grid, double dt, std::uint64_t seed)
    : grid_(grid), dt_(dt), seed_(seed) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("noise time step dt must be positive, got " + std::to_string(dt));
  }
}

void NoiseStream::fill(std::size_t step, std::span<double> out) const {
  if (out.size() != grid_.size()) {
    throw MeshMismatch("NoiseStream::fill: output has " + std::to_string(out.size()) +
                       " cells, grid has " + std::to_string(grid_.size()));
  }
  auto eng = make_engine(seed_, step);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance()));
  for (auto& v : out) v = normal(eng);
}

NoiseField sample_noise(const Grid1D& grid, double dt, std::size_t n_steps, std::uint64_t seed) {
  if (n_steps == 0) throw std::invalid_argument("sample_noise: n_steps must be >= 1");
  NoiseStream stream(grid, dt, seed);
  NoiseField field{grid, dt, n_steps, std::vector<double>(n_steps * grid.size()), seed};
  const std::size_t n = grid.size();
  for (std::size_t m = 0; m < n_steps; ++m) {
    stream.fill(m, std::span<double>(field.increments.data() + m * n, n));
  }
  return field;
}

NoiseField coarsen(const NoiseField& fine) {
  const std::size_t n = fine.grid.size();
  if (fine.n_steps % 2 != 0 || n % 4 != 0) {
    throw MeshMismatch("coarsen: need an even step count and N divisible by 4");
  }
  Grid1D grid(fine.grid.half_width(), n / 2);
  const std::size_t steps = fine.n_steps / 2;
  NoiseField out{grid, 2.0 * fine.dt, steps, std::vector<double>(steps * (n / 2), 0.0), fine.seed};
  for (std::size_t m = 0; m < steps; ++m) {
    const auto r0 = fine.row(2 * m);
    const auto r1 = fine.row(2 * m + 1);
    for (std::size_t j = 0; j < n / 2; ++j) {
      out.increments[m * (n / 2) + j] = (r0[2 * j] + r0[2 * j + 1]) + (r1[2 * j] + r1[2 * j + 1]);
    }
  }
  return out;
}

double sheet_covariance(double s, double t, double x, double y) {
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("sheet_covariance: times must be >= 0");
  return 0.5 * std::min(s, t) * (std::abs(x) + std::abs(y) - std::abs(x - y));
}

std::vector<CovarianceEntry> empirical_sheet_covariance(const Grid1D& grid, double dt,
                                                        std::size_t n_steps,
                                                        std::size_t n_replicates,
                                                        std::span<const SheetPoint> points,
                                                        std::uint64_t seed) {
  if (n_replicates < 2) throw std::invalid_argument("empirical_sheet_covariance: need >= 2 replicates");
  const auto half = static_cast<long>(grid.size() / 2);
  const double horizon = dt * static_cast<double>(n_steps);

  struct Snap {
    std::size_t steps;
    long cells;  // signed cell count from the origin
  };
  std::vector<Snap> snaps;
  std::size_t max_steps = 0;
  for (const auto& p : points) {
    if (p.t < 0.0 || p.t > horizon * (1 + 1e-12)) {
      throw std::out_of_range("sheet point t = " + std::to_string(p.t) + " outside [0, " +
                              std::to_string(horizon) + "]");
    }
    const long k = std::lround(p.x / grid.dx());
    if (k < -half || k > half) {
      throw std::out_of_range("sheet point x = " + std::to_string(p.x) + " outside the grid");
    }
    const auto m = static_cast<std::size_t>(std::lround(p.t / dt));
    snaps.push_back({m, k});
    max_steps = std::max(max_steps, m);
  }

  const std::size_t np = points.size();
  const std::size_t n_pairs = np * (np + 1) / 2;
  NoiseStream stream(grid, dt, seed);

  constexpr std::size_t block = 64;
  const std::size_t n_blocks = (n_replicates + block - 1) / block;
  std::vector<std::vector<MeanAccumulator>> acc(n_blocks, std::vector<MeanAccumulator>(n_pairs));

  parallel_for(n_blocks, [&](std::size_t b) {
    std::vector<double> row(grid.size());
    // Prefix sums in space of the accumulated-in-time increments.
    std::vector<double> col(grid.size());
    std::vector<double> w(np);
    const std::size_t r_end = std::min(n_replicates, (b + 1) * block);
    for (std::size_t r = b * block; r < r_end; ++r) {
      NoiseStream rs(grid, dt, derive_seed(stream.seed(), r));
      std::fill(col.begin(), col.end(), 0.0);
      std::fill(w.begin(), w.end(), 0.0);
      for (std::size_t m = 0; m <= max_steps; ++m) {
        // Snapshot points whose time index equals m read the columns now.
        for (std::size_t i = 0; i < np; ++i) {
          if (snaps[i].steps != m) continue;
          double s = 0;
          const long k = snaps[i].cells;
          if (k > 0) {
            for (long c = half; c < half + k; ++c) s += col[static_cast<std::size_t>(c)];
          } else {
            for (long c = half + k; c < half; ++c) s -= col[static_cast<std::size_t>(c)];
          }
          w[i] = s;
        }
        if (m == max_steps) break;
        rs.fill(m, row);
        for (std::size_t j = 0; j < row.size(); ++j) col[j] += row[j];
      }
      std::size_t q = 0;
      for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = i; j < np; ++j) acc[b][q++].add(w[i] * w[j]);
      }
    }
  });

  std::vector<MeanAccumulator> total(n_pairs);
  for (const auto& blk : acc) {
    for (std::size_t q = 0; q < n_pairs; ++q) total[q].merge(blk[q]);
  }

  std::vector<CovarianceEntry> out;
  std::size_t q = 0;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = i; j < np; ++j, ++q) {
      const SheetPoint a{static_cast<double>(snaps[i].steps) * dt,
                         static_cast<double>(snaps[i].cells) * grid.dx()};
      const SheetPoint c{static_cast<double>(snaps[j].steps) * dt,
                         static_cast<double>(snaps[j].cells) * grid.dx()};
      out.push_back({i, j, a, c, sheet_covariance(a.t, c.t, a.x, c.x), total[q].mean(),
                     total[q].stderr_of_mean()});
    }
  }
  return out;
}

}  // namespace fracspde
