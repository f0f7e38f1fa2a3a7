#pragma once

#include "tomolpp/geometry.hpp"

namespace tomolpp::testing {

/// Scanner scaled down for fast tests: default distances, a detector just
/// wide enough for the magnified grid and a reduced view count.
inline FanBeamGeometry small_geometry(int image_size, int n_views = 180, double pixel_spacing = 1.0) {
  FanBeamGeometry::Params p;
  p.image_size = image_size;
  p.pixel_spacing = pixel_spacing;
  p.n_views = n_views;
  p.detector_spacing = 2.0 * pixel_spacing;
  // Magnification is 2, so one detector per pixel width covers the grid;
  // a few spare channels keep the corners away from the edge.
  p.n_detectors = image_size + 9;
  return FanBeamGeometry(p);
}

}  // namespace tomolpp::testing
