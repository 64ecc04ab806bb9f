#include "fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>

namespace gouysim::detail {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  std::lock_guard lock(planner_mutex());
  buffer_ = fftw_alloc_complex(n);
  if (buffer_ == nullptr) throw std::bad_alloc();
  const int len = static_cast<int>(n);
  forward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(inverse_);
  fftw_free(buffer_);
}

void FftPlan::forward(std::span<std::complex<double>> data) {
  auto* buf = reinterpret_cast<std::complex<double>*>(buffer_);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(forward_);
  std::copy(buf, buf + n_, data.begin());
}

void FftPlan::inverse(std::span<std::complex<double>> data) {
  auto* buf = reinterpret_cast<std::complex<double>*>(buffer_);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(inverse_);
  const double scale = 1.0 / static_cast<double>(n_);
  std::transform(buf, buf + n_, data.begin(), [scale](auto v) { return v * scale; });
}

FftPlan& cached_plan(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> plans;
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

}  // namespace gouysim::detail
