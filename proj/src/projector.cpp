#include "tomolpp/projector.hpp"

#include "tomolpp/ramp_filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tomolpp {

namespace {

void check_image(const Image& image, const FanBeamGeometry& geom) {
  if (static_cast<int>(image.size()) != geom.image_size()) {
    throw std::invalid_argument("image size " + std::to_string(image.size()) +
                                " does not match geometry image_size " +
                                std::to_string(geom.image_size()));
  }
  if (image.pixel_spacing() != geom.pixel_spacing()) {
    throw std::invalid_argument("image pixel spacing does not match geometry");
  }
}

void check_sinogram(const Sinogram& sino, const FanBeamGeometry& geom) {
  if (static_cast<int>(sino.n_views()) != geom.n_views() ||
      static_cast<int>(sino.n_detectors()) != geom.n_detectors()) {
    throw std::invalid_argument("sinogram is " + std::to_string(sino.n_views()) + "x" +
                                std::to_string(sino.n_detectors()) + ", geometry expects " +
                                std::to_string(geom.n_views()) + "x" +
                                std::to_string(geom.n_detectors()));
  }
}

struct ViewTrig {
  double cos_a;
  double sin_a;
};

std::vector<ViewTrig> view_trig(const FanBeamGeometry& geom) {
  std::vector<ViewTrig> out(geom.n_views());
  for (int v = 0; v < geom.n_views(); ++v) {
    const double a = geom.view_angle(v);
    out[v] = {std::cos(a), std::sin(a)};
  }
  return out;
}

// Walks one ray with Joseph's interpolation and calls visit(pixel_index, weight)
// for every grid sample the ray touches. Weights already include the step length.
template <class Visit>
inline void joseph_walk(const RayEndpoints& ray, int n, double ps, Visit&& visit) {
  const double c0 = 0.5 * (n - 1);
  const double dx = ray.detector.x - ray.source.x;
  const double dy = ray.detector.y - ray.source.y;
  const double len = std::hypot(dx, dy);
  const bool along_x = std::abs(dx) >= std::abs(dy);

  // Primary axis coordinate p (x or y), secondary q. Sample k of the primary
  // axis sits at (k - c0) * ps; the ray crosses it at secondary index a + b*k.
  const double dp = along_x ? dx : dy;
  const double dq = along_x ? dy : dx;
  const double sp = along_x ? ray.source.x : ray.source.y;
  const double sq = along_x ? ray.source.y : ray.source.x;
  const double b = dq / dp;
  const double a = (sq + (-c0 * ps - sp) * b) / ps + c0;
  const double step = ps * len / std::abs(dp);

  // Restrict to the source-detector segment.
  const double p_lo = std::min(sp, sp + dp) / ps + c0;
  const double p_hi = std::max(sp, sp + dp) / ps + c0;
  int k_lo = std::max(0, static_cast<int>(std::ceil(p_lo)));
  int k_hi = std::min(n - 1, static_cast<int>(std::floor(p_hi)));

  // Skip primary samples whose secondary index lies off the grid (-1 < f < n).
  // The bounds are widened by one sample; the per-sample test below stays exact.
  if (b != 0.0) {
    const double t0 = (-1.0 - a) / b;
    const double t1 = (n - a) / b;
    const double lo = std::min(t0, t1);
    const double hi = std::max(t0, t1);
    if (hi < k_lo || lo > k_hi) return;
    k_lo = static_cast<int>(std::floor(std::max(lo, static_cast<double>(k_lo))));
    k_hi = static_cast<int>(std::ceil(std::min(hi, static_cast<double>(k_hi))));
  } else if (a <= -1.0 || a >= n) {
    return;
  }

  // Flat index of grid sample (secondary i, primary k) is k * stride_k + i * stride_i.
  const std::ptrdiff_t stride_k = along_x ? 1 : n;
  const std::ptrdiff_t stride_i = along_x ? n : 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double f = a + b * k;
    if (f <= -1.0 || f >= n) continue;
    // f > -1, so truncating f + 1 is floor(f) + 1 without a libm call.
    const int i0 = static_cast<int>(f + 1.0) - 1;
    const double w = f - i0;
    const std::ptrdiff_t idx = k * stride_k + i0 * stride_i;
    if (i0 >= 0 && i0 + 1 < n) {
      visit(static_cast<std::size_t>(idx), (1.0 - w) * step);
      visit(static_cast<std::size_t>(idx + stride_i), w * step);
    } else if (i0 >= 0) {
      visit(static_cast<std::size_t>(idx), (1.0 - w) * step);
    } else {
      visit(static_cast<std::size_t>(idx + stride_i), w * step);
    }
  }
}

// Ray endpoints without the per-call range checks and trig of ray_endpoints().
inline RayEndpoints ray_for(const FanBeamGeometry& geom, const ViewTrig& t, double u) {
  const double r = geom.source_to_iso();
  const double d = geom.iso_to_detector();
  return {{r * t.cos_a, r * t.sin_a},
          {-d * t.cos_a - u * t.sin_a, -d * t.sin_a + u * t.cos_a}};
}

}  // namespace

Sinogram forward_project(const Image& image, const FanBeamGeometry& geom) {
  check_image(image, geom);
  const int n = geom.image_size();
  const double ps = geom.pixel_spacing();
  const int n_views = geom.n_views();
  const int n_det = geom.n_detectors();
  const auto trig = view_trig(geom);
  const auto pixels = image.data();

  Sinogram sino(n_views, n_det);
#pragma omp parallel for schedule(static)
  for (int v = 0; v < n_views; ++v) {
    auto out = sino.view(v);
    for (int c = 0; c < n_det; ++c) {
      const double u = (c - geom.center_channel()) * geom.detector_spacing();
      double acc = 0.0;
      joseph_walk(ray_for(geom, trig[v], u), n, ps,
                  [&](std::size_t idx, double w) { acc += w * pixels[idx]; });
      out[c] = acc;
    }
  }
  return sino;
}

Image backproject(const Sinogram& sino, const FanBeamGeometry& geom) {
  check_sinogram(sino, geom);
  const int n = geom.image_size();
  const double ps = geom.pixel_spacing();
  const int n_views = geom.n_views();
  const int n_det = geom.n_detectors();
  const auto trig = view_trig(geom);

  // Scatter into a fixed number of view blocks, then reduce the blocks in
  // order, so the result does not depend on the thread count.
  const int n_blocks = std::min(n_views, 16);
  std::vector<std::vector<double>> partial(n_blocks, std::vector<double>(std::size_t(n) * n, 0.0));
#pragma omp parallel for schedule(static)
  for (int blk = 0; blk < n_blocks; ++blk) {
    auto& acc = partial[blk];
    const int v_begin = static_cast<int>(static_cast<long>(n_views) * blk / n_blocks);
    const int v_end = static_cast<int>(static_cast<long>(n_views) * (blk + 1) / n_blocks);
    for (int v = v_begin; v < v_end; ++v) {
      const auto row = sino.view(v);
      for (int c = 0; c < n_det; ++c) {
        const double value = row[c];
        if (value == 0.0) continue;
        const double u = (c - geom.center_channel()) * geom.detector_spacing();
        joseph_walk(ray_for(geom, trig[v], u), n, ps,
                    [&](std::size_t idx, double w) { acc[idx] += w * value; });
      }
    }
  }

  Image out(n, ps);
  auto dst = out.data();
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += p[i];
  }
  return out;
}

Image fbp(const Sinogram& sino, const FanBeamGeometry& geom) {
  check_sinogram(sino, geom);
  const int n = geom.image_size();
  const double ps = geom.pixel_spacing();
  const int n_views = geom.n_views();
  const int n_det = geom.n_detectors();
  const double dso = geom.source_to_iso();
  const double dsd = geom.source_to_detector();
  const double cc = geom.center_channel();
  // Everything below works on the virtual detector through the isocenter.
  const double tau = geom.detector_spacing() * dso / dsd;
  const double d_beta = 2.0 * std::acos(-1.0) / n_views;
  const auto trig = view_trig(geom);

  std::vector<double> cos_weight(n_det);
  for (int c = 0; c < n_det; ++c) {
    const double u = (c - cc) * geom.detector_spacing();
    cos_weight[c] = dsd / std::sqrt(dsd * dsd + u * u);
  }

  // q = (tau/2) * (weighted row conv h), with the angular step folded in.
  const double scale = 0.5 * tau * d_beta;
  Sinogram filtered(sino);
  const RampFilter ramp(n_det, tau);
#pragma omp parallel for schedule(static)
  for (int v = 0; v < n_views; ++v) {
    auto row = filtered.view(v);
    for (int c = 0; c < n_det; ++c) row[c] *= cos_weight[c];
    ramp.apply(row);
    for (int c = 0; c < n_det; ++c) row[c] *= scale;
  }

  Image out(n, ps);
  const double c0 = 0.5 * (n - 1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double y = (i - c0) * ps;
    for (int j = 0; j < n; ++j) {
      const double x = (j - c0) * ps;
      double acc = 0.0;
      for (int v = 0; v < n_views; ++v) {
        const double along = x * trig[v].cos_a + y * trig[v].sin_a;
        const double lateral = -x * trig[v].sin_a + y * trig[v].cos_a;
        const double big_u = (dso - along) / dso;
        if (big_u <= 0.0) continue;
        const double ch = lateral / big_u / tau + cc;
        if (ch <= -1.0 || ch >= n_det) continue;
        const double fl = std::floor(ch);
        const int c_lo = static_cast<int>(fl);
        const double w = ch - fl;
        const auto q = filtered.view(v);
        double val = 0.0;
        if (c_lo >= 0) val += (1.0 - w) * q[c_lo];
        if (c_lo + 1 < n_det) val += w * q[c_lo + 1];
        acc += val / (big_u * big_u);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace tomolpp
