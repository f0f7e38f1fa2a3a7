#pragma once

#include "tomolpp/array.hpp"
#include "tomolpp/geometry.hpp"

namespace tomolpp {

/// Fan-beam line integrals with Joseph's method: the ray is sampled once per
/// pixel column (or row, whichever axis it is more aligned with), linearly
/// interpolated across the other axis, and weighted by the step length.
/// Samples falling outside the grid contribute zero.
Sinogram forward_project(const Image& image, const FanBeamGeometry& geom);

/// Exact transpose of forward_project.
Image backproject(const Sinogram& sino, const FanBeamGeometry& geom);

/// Flat-detector fan-beam filtered back-projection: cosine pre-weight, ramp
/// filter along channels, 1/U^2 weighted pixel-driven backprojection over the
/// full orbit with linear interpolation between channels.
Image fbp(const Sinogram& sino, const FanBeamGeometry& geom);

}  // namespace tomolpp
