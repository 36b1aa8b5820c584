#include "fracspde/initial_condition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fracspde/rng.hpp"

namespace fracspde {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double declared_rho(const InitialCondition& ic) {
  return ic.kind == InitialKind::hoelder_rough ? ic.rho : 1.0;
}

bool is_random(const InitialCondition& ic) {
  return ic.kind == InitialKind::hoelder_rough || ic.kind == InitialKind::random_field;
}

std::vector<double> realize(const InitialCondition& ic, const Grid1D& grid, std::uint64_t seed) {
  const std::size_t n = grid.size();
  const double L2 = grid.length();
  std::vector<double> u(n, 0.0);
  switch (ic.kind) {
    case InitialKind::constant:
      std::fill(u.begin(), u.end(), ic.amplitude);
      break;
    case InitialKind::smooth_cosine:
      for (std::size_t j = 0; j < n; ++j) u[j] = ic.amplitude * std::cos(kTwoPi * grid.position(j) / L2);
      break;
    case InitialKind::hoelder_rough: {
      if (!(ic.rho > 0.0 && ic.rho <= 1.0)) {
        throw std::invalid_argument("hoelder_rough: rho must lie in (0, 1], got " + std::to_string(ic.rho));
      }
      if (n < 8) throw std::invalid_argument("hoelder_rough: grid needs at least 8 points");
      const int K = static_cast<int>(std::floor(std::log2(static_cast<double>(n) / 8.0)));
      auto eng = make_engine(seed, 0x1c);
      std::uniform_real_distribution<double> phase(0.0, kTwoPi);
      for (int k = 0; k <= K; ++k) {
        const double amp = ic.amplitude * std::pow(2.0, -ic.rho * k);
        const double freq = std::ldexp(1.0, k) / L2;
        const double phi = phase(eng);
        for (std::size_t j = 0; j < n; ++j) u[j] += amp * std::cos(kTwoPi * freq * grid.position(j) + phi);
      }
      break;
    }
    case InitialKind::random_field: {
      auto eng = make_engine(seed, 0x1d);
      std::uniform_real_distribution<double> phase(0.0, kTwoPi), coef(-1.0, 1.0);
      for (int k = 1; k <= 8 && static_cast<std::size_t>(k) < n / 2; ++k) {
        const double amp = ic.amplitude * std::ldexp(1.0, -k) * coef(eng);
        const double phi = phase(eng);
        for (std::size_t j = 0; j < n; ++j) u[j] += amp * std::cos(kTwoPi * k * grid.position(j) / L2 + phi);
      }
      break;
    }
  }
  if (ic.shift_cells != 0) {
    const auto nn = static_cast<long>(n);
    const long s = ((ic.shift_cells % nn) + nn) % nn;
    std::rotate(u.begin(), u.begin() + (nn - s) % nn, u.end());
  }
  return u;
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::constant: return "constant";
    case InitialKind::smooth_cosine: return "smooth_cosine";
    case InitialKind::hoelder_rough: return "hoelder_rough";
    case InitialKind::random_field: return "random_field";
  }
  return "constant";
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "constant") return InitialKind::constant;
  if (name == "smooth_cosine") return InitialKind::smooth_cosine;
  if (name == "hoelder_rough") return InitialKind::hoelder_rough;
  if (name == "random_field") return InitialKind::random_field;
  throw std::invalid_argument("unknown initial condition '" + name +
                              "' (expected constant, smooth_cosine, hoelder_rough or random_field)");
}

}  // namespace fracspde
