#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

struct fftw_plan_s;

namespace fracspde {

using Complex = std::complex<double>;

/// Real-to-half-complex transform pair of fixed length N (even).
///
/// forward: X_k = sum_j x_j e^{-2 pi i jk/N}, k = 0..N/2.
/// inverse: x_j = (1/N) sum_k X_k e^{+2 pi i jk/N}, Hermitian extension implied.
///
/// Not copyable; one instance per thread. Plans are created with
/// FFTW_ESTIMATE so the algorithm choice (and therefore every bit of the
/// output) does not depend on timing.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  std::size_t half_size() const noexcept { return n_ / 2 + 1; }

  void forward(std::span<const double> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  double* real_ = nullptr;
  Complex* spec_ = nullptr;
  fftw_plan_s* r2c_ = nullptr;
  fftw_plan_s* c2r_ = nullptr;
};

/// Full complex DFT, unnormalized forward and 1/N-normalized inverse.
class ComplexFft {
 public:
  explicit ComplexFft(std::size_t n);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<const Complex> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<Complex> out);

 private:
  std::size_t n_;
  Complex* buf_ = nullptr;
  fftw_plan_s* fwd_ = nullptr;
  fftw_plan_s* bwd_ = nullptr;
};

/// Even cosine synthesis on N/2 + 1 coefficients:
///   y_j = c_0 + (-1)^j c_{N/2} + 2 sum_{k=1}^{N/2-1} c_k cos(pi jk / (N/2)),  j = 0..N/2.
/// Returns the full length-N sequence in FFT order, mirrored so that
/// y[j] == y[N - j] holds bit-for-bit.
std::vector<double> even_cosine_synthesis(std::span<const double> coeffs);

}  // namespace fracspde
