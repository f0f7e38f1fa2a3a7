#pragma once

#include "tomolpp/array.hpp"
#include "tomolpp/config.hpp"
#include "tomolpp/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tomolpp {

/// Dead detector channels. A dead channel reads zero in every view.
class LppMask {
 public:
  LppMask() = default;
  /// Sorts and validates; duplicates or out-of-range indices are rejected.
  LppMask(std::vector<int> dead_channels, int n_detectors);

  static LppMask empty(int n_detectors) { return LppMask({}, n_detectors); }

  const std::vector<int>& dead_channels() const { return dead_; }
  int n_detectors() const { return n_detectors_; }
  std::size_t count() const { return dead_.size(); }
  bool is_dead(int channel) const;
  /// Per-channel flags, true for dead.
  std::vector<bool> flags() const;

  bool operator==(const LppMask&) const = default;

 private:
  std::vector<int> dead_;
  int n_detectors_ = 0;
};

/// Draw parameters for random masks; defaults pick 7..15 channels in [80, 601].
struct LppSpec {
  int count_lo = 7;
  int count_hi = 15;
  int index_lo = 80;
  int index_hi = 601;
};

/// Count ~ uniform on [count_lo, count_hi], then that many distinct channels
/// from [index_lo, index_hi] by a partial Fisher-Yates shuffle. Both draws use
/// Rng(seed) in that order.
LppMask generate_mask(std::uint64_t seed, const LppSpec& spec, int n_detectors);

/// Copy of `sino` with every dead column zeroed.
Sinogram apply_mask(const Sinogram& sino, const LppMask& mask);

/// apply_mask(forward_project(image, geom), mask).
Sinogram masked_forward(const Image& image, const FanBeamGeometry& geom, const LppMask& mask);

/// "80,123,456" (empty string for no dead channels).
std::string format_channels(const LppMask& mask);
LppMask parse_channels(const std::string& text, int n_detectors);

/// `n_detectors = N` and `dead_channels = a,b,c`.
KeyValueFile to_key_values(const LppMask& mask);
LppMask mask_from_key_values(const KeyValueFile& kv);

}  // namespace tomolpp
