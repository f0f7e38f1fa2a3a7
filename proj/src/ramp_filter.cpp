#include "tomolpp/ramp_filter.hpp"

#include <fftw3.h>

#include <bit>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tomolpp {

namespace {

// FFTW planning is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwDeleter> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwDeleter>(p);
}

}  // namespace

double ramp_kernel(long n, double spacing) {
  if (n == 0) return 1.0 / (4.0 * spacing * spacing);
  if (n % 2 == 0) return 0.0;
  const double d = std::numbers::pi * static_cast<double>(n) * spacing;
  return -1.0 / (d * d);
}

struct RampFilter::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  std::vector<double> response;  // real spectrum of the kernel, padded_/2+1 bins

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

RampFilter::RampFilter(std::size_t length, double spacing)
    : length_(length), padded_(2 * std::bit_ceil(std::max<std::size_t>(length, 1))),
      plans_(std::make_unique<Plans>()) {
  if (!(spacing > 0.0)) throw std::invalid_argument("RampFilter: spacing must be > 0");
  const std::size_t bins = padded_ / 2 + 1;
  auto real = fftw_buffer<double>(padded_);
  auto spec = fftw_buffer<fftw_complex>(bins);
  {
    std::lock_guard lock(planner_mutex());
    const int n = static_cast<int>(padded_);
    plans_->forward = fftw_plan_dft_r2c_1d(n, real.get(), spec.get(), FFTW_ESTIMATE);
    plans_->inverse = fftw_plan_dft_c2r_1d(n, spec.get(), real.get(), FFTW_ESTIMATE);
  }
  if (!plans_->forward || !plans_->inverse) throw std::runtime_error("RampFilter: FFTW planning failed");

  // Kernel laid out cyclically: index m holds h(m) for m < N/2, h(m - N) above.
  const long half = static_cast<long>(padded_ / 2);
  for (std::size_t m = 0; m < padded_; ++m) {
    const long k = static_cast<long>(m) < half ? static_cast<long>(m) : static_cast<long>(m) - 2 * half;
    real[m] = ramp_kernel(k, spacing);
  }
  fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
  // The kernel is even, so its spectrum is real. Fold in the 1/N of the inverse.
  plans_->response.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) plans_->response[b] = spec[b][0] / static_cast<double>(padded_);
}

RampFilter::~RampFilter() = default;
RampFilter::RampFilter(RampFilter&&) noexcept = default;
RampFilter& RampFilter::operator=(RampFilter&&) noexcept = default;

void RampFilter::apply(std::span<double> row) const {
  if (row.size() != length_) throw std::invalid_argument("RampFilter::apply: row length mismatch");
  const std::size_t bins = padded_ / 2 + 1;
  auto real = fftw_buffer<double>(padded_);
  auto spec = fftw_buffer<fftw_complex>(bins);
  std::fill(real.get(), real.get() + padded_, 0.0);
  std::copy(row.begin(), row.end(), real.get());
  fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
  for (std::size_t b = 0; b < bins; ++b) {
    spec[b][0] *= plans_->response[b];
    spec[b][1] *= plans_->response[b];
  }
  fftw_execute_dft_c2r(plans_->inverse, spec.get(), real.get());
  std::copy(real.get(), real.get() + length_, row.begin());
}

std::vector<double> ramp_filter_row(std::span<const double> row, double detector_spacing) {
  std::vector<double> out(row.begin(), row.end());
  if (out.size() < 2) return out;
  RampFilter(out.size(), detector_spacing).apply(out);
  return out;
}

}  // namespace tomolpp
