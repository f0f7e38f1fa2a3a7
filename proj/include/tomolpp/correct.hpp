#pragma once

#include "tomolpp/array.hpp"
#include "tomolpp/config.hpp"
#include "tomolpp/geometry.hpp"
#include "tomolpp/lpp_mask.hpp"
#include "tomolpp/transforms.hpp"

#include <functional>
#include <vector>

namespace tomolpp {

/// Replaces dead channels, view by view, with linear interpolation between
/// the nearest observed channels. Dead runs touching the detector edge copy
/// the nearest observed value. Throws DegenerateInputError if every channel
/// is dead.
Sinogram interpolate_sinogram(const Sinogram& corrupted, const LppMask& mask);

enum class IstaInit { fbp_of_observed, interpolation_then_fbp };

std::string to_string(IstaInit init);
IstaInit parse_ista_init(const std::string& text);

/// Unrolled ISTA parameters: one step size and one threshold per layer.
struct IstaConfig {
  std::vector<double> step_sizes;
  std::vector<double> thresholds;
  TransformKind transform = TransformKind::dct8;
  IstaInit init = IstaInit::interpolation_then_fbp;

  std::size_t n_layers() const { return step_sizes.size(); }

  /// Tuned defaults: 15 layers, rho = 1, theta_k = theta0 * gamma^k.
  static IstaConfig defaults();
  static IstaConfig geometric(std::size_t n_layers, double rho, double theta0, double gamma);

  /// Throws std::invalid_argument if lengths differ, any rho <= 0, or any theta < 0.
  void validate() const;
};

inline constexpr double kDefaultTheta0 = 0.005;
inline constexpr double kDefaultThetaDecay = 0.7;
inline constexpr std::size_t kDefaultLayers = 15;

/// Keys: n_layers, step_sizes, thresholds, transform, init. A single step
/// size or threshold is broadcast to every layer; when thresholds are absent
/// they follow theta0 / theta_decay.
KeyValueFile to_key_values(const IstaConfig& cfg);
IstaConfig ista_config_from_key_values(const KeyValueFile& kv);

/// x - rho * fbp(apply_mask(forward_project(x), mask) - y).
Image data_consistency_step(const Image& x, const Sinogram& y, const LppMask& mask,
                            const FanBeamGeometry& geom, double rho);

/// Initial image of the unrolled solver for the given strategy.
Image ista_initialize(const Sinogram& y, const LppMask& mask, const FanBeamGeometry& geom,
                      IstaInit init);

/// Called after each layer with (layer index starting at 1, current image).
using IstaObserver = std::function<void(std::size_t, const Image&)>;

/// K rounds of data consistency followed by transform-domain soft thresholding.
Image ista_correct(const Sinogram& y, const LppMask& mask, const FanBeamGeometry& geom,
                   const IstaConfig& cfg, const IstaObserver& observer = {});

/// Same iteration from an explicit starting image.
Image ista_iterate(Image x, const Sinogram& y, const LppMask& mask, const FanBeamGeometry& geom,
                   const IstaConfig& cfg, const IstaObserver& observer = {});

}  // namespace tomolpp
