#pragma once

#include "tomolpp/array.hpp"
#include "tomolpp/geometry.hpp"
#include "tomolpp/lpp_mask.hpp"

#include <cstdint>
#include <optional>

namespace tomolpp {

inline constexpr double kPhantomMuMax = 0.6;
inline constexpr double kSampleMuMin = 0.5;
inline constexpr double kSampleMuMax = 0.7;

/// Scales intensities so the maximum becomes mu_max. Throws
/// DegenerateInputError if no value is positive.
Image to_attenuation(const Image& gray, double mu_max);

/// Original (Kak & Slaney) Shepp-Logan ellipses sampled at pixel centers,
/// rescaled so the maximum is 0.6. Row 0 is the top (+y) of the phantom.
Image shepp_logan(std::size_t size, double pixel_spacing = 1.0);

/// Centered uniform disk; boundary pixels carry their covered area fraction
/// (8x8 supersampling).
Image disk_phantom(std::size_t size, double radius_px, double mu, double pixel_spacing = 1.0);

/// RGB to luminance with weights 0.299 / 0.587 / 0.114.
double luminance(double r, double g, double b);

/// Bilinear resample of an arbitrary rows x cols grid onto size x size,
/// stretching to fill (aspect ratio is not preserved).
Image resize_to_square(const Array2D& gray, std::size_t size, double pixel_spacing = 1.0);

struct Sample {
  Image gt_image;
  Sinogram clean_sino;
  LppMask mask;
  Sinogram corrupted_sino;
  Image fbp_image;
  std::uint64_t rng_seed = 0;
  double mu_max = 0.0;
};

struct SampleOptions {
  LppSpec lpp;
  /// Bypasses the random mask draw.
  std::optional<LppMask> forced_mask;
  /// Bypasses the Uniform[0.5, 0.7] draw.
  std::optional<double> mu_max;
};

/// Generates one training/evaluation sample from a grayscale image already
/// at geom.image_size. Rng(seed) yields mu_max first, then the seed handed
/// to generate_mask().
Sample make_sample(const Image& gray, const FanBeamGeometry& geom, std::uint64_t seed,
                   const SampleOptions& options = {});

}  // namespace tomolpp
