#pragma once

#include "tomolpp/array.hpp"

#include <optional>

namespace tomolpp {

inline constexpr double kMuWater = 0.268;
inline constexpr double kMuAir = 0.0;

/// HU = 1000 * (mu - mu_water) / (mu_water - mu_air).
double mu_to_hu(double mu);
Image mu_to_hu(const Image& image);

struct MetricReport {
  double mae_hu = 0.0;
  double psnr_db = 0.0;  ///< +inf for identical images
  double ssim = 1.0;
};

struct MetricOptions {
  /// Dynamic range L in HU. Unset: max(gt_HU) - min(gt_HU).
  std::optional<double> psnr_range;
  /// Restrict every metric to the inscribed circle of the grid.
  bool fov_only = false;
};

/// SSIM window: 11x11 Gaussian, sigma 1.5, K1 = 0.01, K2 = 0.03. Only
/// window positions that fit entirely inside the image are averaged.
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

/// Local SSIM map over valid window centers (size (rows-10) x (cols-10)).
Array2D ssim_map(const Array2D& x, const Array2D& y, double dynamic_range);

/// Converts both images to HU and scores `pred` against `gt`.
/// Throws std::invalid_argument on shape mismatch and DegenerateInputError
/// when the dynamic range is zero.
MetricReport evaluate(const Image& pred, const Image& gt, const MetricOptions& options = {});

}  // namespace tomolpp
