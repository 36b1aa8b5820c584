#include "fracspde/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <new>
#include <stdexcept>
#include <utility>

namespace fracspde {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <typename T>
T* fftw_alloc(std::size_t count) {
  void* p = fftw_malloc(sizeof(T) * count);
  if (p == nullptr) throw std::bad_alloc();
  return static_cast<T*>(p);
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(want) +
                                ", got " + std::to_string(got));
  }
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("RealFft: length must be even and >= 2");
  real_ = fftw_alloc<double>(n);
  spec_ = fftw_alloc<Complex>(n / 2 + 1);
  std::lock_guard lock(planner_mutex());
  auto* spec = reinterpret_cast<fftw_complex*>(spec_);
  r2c_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, spec, FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, real_, FFTW_ESTIMATE);
  if (r2c_ == nullptr || c2r_ == nullptr) {
    release();
    throw std::runtime_error("RealFft: FFTW planning failed");
  }
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      spec_(std::exchange(other.spec_, nullptr)),
      r2c_(std::exchange(other.r2c_, nullptr)),
      c2r_(std::exchange(other.c2r_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    real_ = std::exchange(other.real_, nullptr);
    spec_ = std::exchange(other.spec_, nullptr);
    r2c_ = std::exchange(other.r2c_, nullptr);
    c2r_ = std::exchange(other.c2r_, nullptr);
  }
  return *this;
}

void RealFft::release() noexcept {
  {
    std::lock_guard lock(planner_mutex());
    if (r2c_ != nullptr) fftw_destroy_plan(r2c_);
    if (c2r_ != nullptr) fftw_destroy_plan(c2r_);
  }
  if (real_ != nullptr) fftw_free(real_);
  if (spec_ != nullptr) fftw_free(spec_);
  r2c_ = c2r_ = nullptr;
  real_ = nullptr;
  spec_ = nullptr;
}

void RealFft::forward(std::span<const double> in, std::span<Complex> out) {
  check_size(in.size(), n_, "RealFft::forward input");
  check_size(out.size(), half_size(), "RealFft::forward output");
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(r2c_);
  std::copy(spec_, spec_ + half_size(), out.begin());
}

void RealFft::inverse(std::span<const Complex> in, std::span<double> out) {
  check_size(in.size(), half_size(), "RealFft::inverse input");
  check_size(out.size(), n_, "RealFft::inverse output");
  // c2r destroys its input, so always work on the private buffer.
  std::copy(in.begin(), in.end(), spec_);
  fftw_execute(c2r_);
  const double scale = 1.0 / static_cast<double>(n_);
  std::transform(real_, real_ + n_, out.begin(), [scale](double v) { return v * scale; });
}

ComplexFft::ComplexFft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("ComplexFft: length must be positive");
  buf_ = fftw_alloc<Complex>(n);
  std::lock_guard lock(planner_mutex());
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft() {
  {
    std::lock_guard lock(planner_mutex());
    if (fwd_ != nullptr) fftw_destroy_plan(fwd_);
    if (bwd_ != nullptr) fftw_destroy_plan(bwd_);
  }
  if (buf_ != nullptr) fftw_free(buf_);
}

void ComplexFft::forward(std::span<const Complex> in, std::span<Complex> out) {
  check_size(in.size(), n_, "ComplexFft::forward input");
  check_size(out.size(), n_, "ComplexFft::forward output");
  std::copy(in.begin(), in.end(), buf_);
  fftw_execute(fwd_);
  std::copy(buf_, buf_ + n_, out.begin());
}

void ComplexFft::inverse(std::span<const Complex> in, std::span<Complex> out) {
  check_size(in.size(), n_, "ComplexFft::inverse input");
  check_size(out.size(), n_, "ComplexFft::inverse output");
  std::copy(in.begin(), in.end(), buf_);
  fftw_execute(bwd_);
  const double scale = 1.0 / static_cast<double>(n_);
  std::transform(buf_, buf_ + n_, out.begin(), [scale](Complex v) { return v * scale; });
}

std::vector<double> even_cosine_synthesis(std::span<const double> coeffs) {
  const std::size_t half = coeffs.size();
  if (half < 2) throw std::invalid_argument("even_cosine_synthesis: need at least 2 coefficients");
  const std::size_t n = 2 * (half - 1);

  double* buf = fftw_alloc<double>(half);
  std::copy(coeffs.begin(), coeffs.end(), buf);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_r2r_1d(static_cast<int>(half), buf, buf, FFTW_REDFT00, FFTW_ESTIMATE);
  }
  // Planning with FFTW_ESTIMATE leaves the array untouched, but be explicit.
  std::copy(coeffs.begin(), coeffs.end(), buf);
  fftw_execute(plan);

  std::vector<double> out(n);
  for (std::size_t j = 0; j < half; ++j) out[j] = buf[j];
  for (std::size_t j = half; j < n; ++j) out[j] = out[n - j];
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

}  // namespace fracspde
