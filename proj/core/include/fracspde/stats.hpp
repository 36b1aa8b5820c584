#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracspde {

/// Neumaier compensated sum; merging two accumulators is exact in the
/// same sense as adding their terms one by one.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  void merge(const CompensatedSum& other) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Running first and second moments of a scalar.
class MeanAccumulator {
 public:
  void add(double v) noexcept;
  void merge(const MeanAccumulator& other) noexcept;
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept;
  /// Unbiased sample variance.
  double variance() const noexcept;
  double stderr_of_mean() const noexcept;

 private:
  std::size_t n_ = 0;
  double shift_ = 0.0;  // first sample; sums are of (v - shift_)
  CompensatedSum s1_;
  CompensatedSum s2_;
};

struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;
  double intercept_stderr;
  std::vector<double> residuals;
};

/// Weighted least squares y ~ intercept + slope x. Weights default to 1.
/// The stderr uses the residual scale when there are more than two points.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights = {});

}  // namespace fracspde
