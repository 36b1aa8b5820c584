#include "fracspde/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace fracspde {

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::merge(const CompensatedSum& other) noexcept {
  add(other.sum_);
  add(other.comp_);
}

void MeanAccumulator::add(double v) noexcept {
  if (n_ == 0) shift_ = v;
  ++n_;
  const double d = v - shift_;
  s1_.add(d);
  s2_.add(d * d);
}

void MeanAccumulator::merge(const MeanAccumulator& other) noexcept {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double no = static_cast<double>(other.n_);
  const double delta = other.shift_ - shift_;
  const double o1 = other.s1_.value();
  n_ += other.n_;
  s1_.merge(other.s1_);
  s1_.add(no * delta);
  s2_.merge(other.s2_);
  s2_.add(2.0 * delta * o1);
  s2_.add(no * delta * delta);
}

double MeanAccumulator::mean() const noexcept {
  return n_ == 0 ? 0.0 : shift_ + s1_.value() / static_cast<double>(n_);
}

double MeanAccumulator::variance() const noexcept {
  if (n_ < 2) return 0.0;
  const double n = static_cast<double>(n_);
  const double m = s1_.value() / n;
  const double v = (s2_.value() - n * m * m) / (n - 1.0);
  return v > 0.0 ? v : 0.0;
}

double MeanAccumulator::stderr_of_mean() const noexcept {
  if (n_ < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(n_));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights) {
  const std::size_t n = x.size();
  if (y.size() != n || (!weights.empty() && weights.size() != n)) {
    throw std::invalid_argument("fit_line: x, y and weights must have equal length");
  }
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");

  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!(w > 0.0)) throw std::invalid_argument("fit_line: weights must be positive");
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
  }
  const double xm = sx / sw;
  const double ym = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    sxx += w * (x[i] - xm) * (x[i] - xm);
    sxy += w * (x[i] - xm) * (y[i] - ym);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: degenerate abscissae (all equal)");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  fit.residuals.resize(n);
  double chi2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    fit.residuals[i] = y[i] - fit.intercept - fit.slope * x[i];
    chi2 += w * fit.residuals[i] * fit.residuals[i];
  }
  // With explicit weights (inverse variances) the scale is 1; without them
  // it is estimated from the residuals.
  double scale = 1.0;
  if (weights.empty()) scale = n > 2 ? chi2 / static_cast<double>(n - 2) : 0.0;
  fit.slope_stderr = std::sqrt(scale / sxx);
  fit.intercept_stderr = std::sqrt(scale * (1.0 / sw + xm * xm / sxx));
  return fit;
}

}  // namespace fracspde
