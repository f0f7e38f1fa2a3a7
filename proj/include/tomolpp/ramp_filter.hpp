#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace tomolpp {

/// Closed-form band-limited ramp kernel sampled at spacing s:
/// h(0) = 1/(4 s^2), h(n odd) = -1/(pi n s)^2, h(n even, n != 0) = 0.
double ramp_kernel(long n, double spacing);

/// Convolves rows of a fixed length with the discrete ramp kernel.
///
/// Rows are zero-padded to twice the next power of two so the cyclic FFT
/// convolution equals the linear one over the output samples. One instance
/// may be shared across threads; apply() only touches caller-owned buffers.
class RampFilter {
 public:
  RampFilter(std::size_t length, double spacing);
  ~RampFilter();
  RampFilter(RampFilter&&) noexcept;
  RampFilter& operator=(RampFilter&&) noexcept;

  std::size_t length() const { return length_; }
  std::size_t padded_length() const { return padded_; }

  /// Filters `row` in place. row.size() must equal length().
  void apply(std::span<double> row) const;

 private:
  struct Plans;
  std::size_t length_;
  std::size_t padded_;
  std::unique_ptr<Plans> plans_;
};

/// One-shot convenience wrapper. Rows shorter than 2 are returned unchanged.
std::vector<double> ramp_filter_row(std::span<const double> row, double detector_spacing);

}  // namespace tomolpp
