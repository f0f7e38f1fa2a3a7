#pragma once

#include "tomolpp/config.hpp"

#include <cstddef>

namespace tomolpp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct RayEndpoints {
  Point2 source;
  Point2 detector;
};

/// Flat-detector fan-beam scanner with a full 2*pi circular source orbit.
///
/// Distances are in the same units as the image pixel spacing. View 0 puts
/// the source on the +x axis; views advance counter-clockwise. The detector
/// line sits opposite the source at `iso_to_detector` from the isocenter and
/// channel c is displaced laterally by (c - (n_detectors-1)/2) * detector_spacing
/// along the direction (-sin a, cos a).
class FanBeamGeometry {
 public:
  struct Params {
    int n_detectors = 681;
    int n_views = 984;
    double source_to_iso = 722.0;
    double iso_to_detector = 722.0;
    double detector_spacing = 2.0;
    int image_size = 512;
    double pixel_spacing = 1.0;
  };

  FanBeamGeometry() : FanBeamGeometry(Params{}) {}
  explicit FanBeamGeometry(const Params& params);

  const Params& params() const { return p_; }
  int n_detectors() const { return p_.n_detectors; }
  int n_views() const { return p_.n_views; }
  double source_to_iso() const { return p_.source_to_iso; }
  double iso_to_detector() const { return p_.iso_to_detector; }
  double source_to_detector() const { return p_.source_to_iso + p_.iso_to_detector; }
  double detector_spacing() const { return p_.detector_spacing; }
  int image_size() const { return p_.image_size; }
  double pixel_spacing() const { return p_.pixel_spacing; }
  double magnification() const { return source_to_detector() / p_.source_to_iso; }
  double center_channel() const { return 0.5 * (p_.n_detectors - 1); }

  double view_angle(int view) const;
  /// Lateral offset u of a channel along the detector line.
  double channel_offset(int channel) const;
  RayEndpoints ray_endpoints(int view, int channel) const;

  bool operator==(const FanBeamGeometry& other) const;

 private:
  Params p_;
};

/// Field-name keyed block, e.g. `n_detectors = 681`.
KeyValueFile to_key_values(const FanBeamGeometry& geom);
/// Missing keys take their defaults; unknown keys are rejected.
FanBeamGeometry geometry_from_key_values(const KeyValueFile& kv);

}  // namespace tomolpp
