#include "tomolpp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tomolpp {

FanBeamGeometry::FanBeamGeometry(const Params& params) : p_(params) {
  if (!(p_.source_to_iso > 0.0) || !(p_.iso_to_detector > 0.0) || !(p_.detector_spacing > 0.0) ||
      !(p_.pixel_spacing > 0.0)) {
    throw std::invalid_argument("FanBeamGeometry: distances and spacings must be positive");
  }
  if (p_.n_detectors < 2) throw std::invalid_argument("FanBeamGeometry: n_detectors must be >= 2");
  if (p_.n_views < 1) throw std::invalid_argument("FanBeamGeometry: n_views must be >= 1");
  if (p_.image_size < 1) throw std::invalid_argument("FanBeamGeometry: image_size must be >= 1");
  const double detector_length = p_.n_detectors * p_.detector_spacing;
  const double needed = magnification() * p_.image_size * p_.pixel_spacing;
  if (detector_length < needed) {
    throw std::invalid_argument("FanBeamGeometry: detector length " + std::to_string(detector_length) +
                                " does not cover the magnified field of view " +
                                std::to_string(needed));
  }
}

double FanBeamGeometry::view_angle(int view) const {
  if (view < 0 || view >= p_.n_views) throw std::out_of_range("view index out of range");
  return 2.0 * std::numbers::pi * view / p_.n_views;
}

double FanBeamGeometry::channel_offset(int channel) const {
  if (channel < 0 || channel >= p_.n_detectors) throw std::out_of_range("channel index out of range");
  return (channel - center_channel()) * p_.detector_spacing;
}

RayEndpoints FanBeamGeometry::ray_endpoints(int view, int channel) const {
  const double a = view_angle(view);
  const double u = channel_offset(channel);
  const double c = std::cos(a);
  const double s = std::sin(a);
  return {{p_.source_to_iso * c, p_.source_to_iso * s},
          {-p_.iso_to_detector * c - u * s, -p_.iso_to_detector * s + u * c}};
}

bool FanBeamGeometry::operator==(const FanBeamGeometry& o) const {
  return p_.n_detectors == o.p_.n_detectors && p_.n_views == o.p_.n_views &&
         p_.source_to_iso == o.p_.source_to_iso && p_.iso_to_detector == o.p_.iso_to_detector &&
         p_.detector_spacing == o.p_.detector_spacing && p_.image_size == o.p_.image_size &&
         p_.pixel_spacing == o.p_.pixel_spacing;
}

KeyValueFile to_key_values(const FanBeamGeometry& geom) {
  const auto& p = geom.params();
  KeyValueFile kv;
  kv.set("n_detectors", p.n_detectors);
  kv.set("n_views", p.n_views);
  kv.set("source_to_iso", p.source_to_iso);
  kv.set("iso_to_detector", p.iso_to_detector);
  kv.set("detector_spacing", p.detector_spacing);
  kv.set("image_size", p.image_size);
  kv.set("pixel_spacing", p.pixel_spacing);
  return kv;
}

FanBeamGeometry geometry_from_key_values(const KeyValueFile& kv) {
  kv.require_known({"n_detectors", "n_views", "source_to_iso", "iso_to_detector", "detector_spacing",
                    "image_size", "pixel_spacing"});
  FanBeamGeometry::Params p;
  p.n_detectors = static_cast<int>(kv.get_int("n_detectors", p.n_detectors));
  p.n_views = static_cast<int>(kv.get_int("n_views", p.n_views));
  p.source_to_iso = kv.get_double("source_to_iso", p.source_to_iso);
  p.iso_to_detector = kv.get_double("iso_to_detector", p.iso_to_detector);
  p.detector_spacing = kv.get_double("detector_spacing", p.detector_spacing);
  p.image_size = static_cast<int>(kv.get_int("image_size", p.image_size));
  p.pixel_spacing = kv.get_double("pixel_spacing", p.pixel_spacing);
  return FanBeamGeometry(p);
}

}  // namespace tomolpp
