#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracspde {

/// Grid too coarse or too narrow for the requested kernel time.
class ResolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite value produced while time stepping.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Shapes of two objects that must share a mesh disagree.
class MeshMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-point iteration stopped at max_iter; carries the distance history.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> distances)
      : std::runtime_error(what), distances_(std::move(distances)) {}
  const std::vector<double>& distances() const noexcept { return distances_; }

 private:
  std::vector<double> distances_;
};

}  // namespace fracspde
