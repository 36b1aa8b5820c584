#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracspde/grid.hpp"

namespace fracspde {

enum class InitialKind { constant, smooth_cosine, hoelder_rough, random_field };

/// u_0 on the grid.
///   constant       u_0 = amplitude
///   smooth_cosine  amplitude cos(2 pi x / 2L)
///   hoelder_rough  amplitude sum_{k=0}^{K} 2^{-rho k} cos(2 pi 2^k x / 2L + phi_k),
///                  2^K <= N/8, phases drawn from the seed
///   random_field   amplitude sum_{k=1}^{8} 2^{-k} U_k cos(2 pi k x / 2L + phi_k),
///                  U_k uniform in [-1, 1]
struct InitialCondition {
  InitialKind kind = InitialKind::constant;
  double amplitude = 0.0;
  double rho = 1.0;  // used by hoelder_rough only
  long shift_cells = 0;  // circular shift of the realized values
};

/// Hoelder exponent the construction guarantees.
double declared_rho(const InitialCondition& ic);

bool is_random(const InitialCondition& ic);

std::vector<double> realize(const InitialCondition& ic, const Grid1D& grid, std::uint64_t seed);

std::string to_string(InitialKind kind);
InitialKind parse_initial_kind(const std::string& name);

}  // namespace fracspde
