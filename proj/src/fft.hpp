#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace gouysim::detail {

/// In-place complex FFT of fixed size backed by FFTW. The inverse transform
/// is normalized by 1/n.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<std::complex<double>> data);
  void inverse(std::span<std::complex<double>> data);

 private:
  std::size_t n_;
  fftw_complex* buffer_;
  fftw_plan forward_;
  fftw_plan inverse_;
};

/// Per-thread plan reused across calls of the same size.
FftPlan& cached_plan(std::size_t n);

}  // namespace gouysim::detail
