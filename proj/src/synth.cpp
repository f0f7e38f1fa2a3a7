#include "tomolpp/synth.hpp"

#include "tomolpp/projector.hpp"
#include "tomolpp/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomolpp {

namespace {

struct Ellipse {
  double intensity;
  double a;  // semi-axis along the rotated x direction
  double b;
  double x0;
  double y0;
  double phi_deg;
};

// Kak & Slaney, Table 3.1.
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {2.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
    {-0.98, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
    {-0.02, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
    {-0.02, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
    {0.01, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
    {0.01, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
    {0.01, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
    {0.01, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
    {0.01, 0.0230, 0.0230, 0.00, -0.6050, 0.0},
    {0.01, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
}};

}  // namespace

Image to_attenuation(const Image& gray, double mu_max) {
  if (!(mu_max > 0.0)) throw std::invalid_argument("to_attenuation: mu_max must be > 0");
  const double peak = *std::max_element(gray.data().begin(), gray.data().end());
  if (!(peak > 0.0)) throw DegenerateInputError("to_attenuation: image has no positive intensity");
  Image out(gray);
  for (double& v : out.data()) {
    if (v < 0.0) throw std::invalid_argument("to_attenuation: intensities must be >= 0");
    v = v == peak ? mu_max : v * (mu_max / peak);
  }
  return out;
}

Image shepp_logan(std::size_t size, double pixel_spacing) {
  if (size < 16) throw std::invalid_argument("shepp_logan: size must be >= 16");
  Image img(size, pixel_spacing);
  const double c0 = 0.5 * (static_cast<double>(size) - 1.0);
  const double half = 0.5 * static_cast<double>(size);
  for (const auto& e : kSheppLogan) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    for (std::size_t r = 0; r < size; ++r) {
      const double y = (c0 - static_cast<double>(r)) / half;
      for (std::size_t c = 0; c < size; ++c) {
        const double x = (static_cast<double>(c) - c0) / half;
        const double dx = x - e.x0;
        const double dy = y - e.y0;
        const double xr = dx * cp + dy * sp;
        const double yr = -dx * sp + dy * cp;
        if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0) img(r, c) += e.intensity;
      }
    }
  }
  // The skull ring (intensity 2.0) is the maximum.
  for (double& v : img.data()) v = std::abs(v) < 1e-12 ? 0.0 : v;
  return to_attenuation(img, kPhantomMuMax);
}

Image disk_phantom(std::size_t size, double radius_px, double mu, double pixel_spacing) {
  if (size == 0) throw std::invalid_argument("disk_phantom: size must be >= 1");
  if (!(radius_px > 0.0)) throw std::invalid_argument("disk_phantom: radius must be > 0");
  constexpr int kSub = 8;
  Image img(size, pixel_spacing);
  const double c0 = 0.5 * (static_cast<double>(size) - 1.0);
  const double r2 = radius_px * radius_px;
  const double edge = std::sqrt(2.0) * 0.5;
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double y = static_cast<double>(r) - c0;
      const double x = static_cast<double>(c) - c0;
      const double dist = std::hypot(x, y);
      if (dist <= radius_px - edge) {
        img(r, c) = mu;
      } else if (dist < radius_px + edge) {
        int inside = 0;
        for (int sy = 0; sy < kSub; ++sy) {
          for (int sx = 0; sx < kSub; ++sx) {
            const double px = x - 0.5 + (sx + 0.5) / kSub;
            const double py = y - 0.5 + (sy + 0.5) / kSub;
            if (px * px + py * py <= r2) ++inside;
          }
        }
        img(r, c) = mu * inside / (kSub * kSub);
      }
    }
  }
  return img;
}

double luminance(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

Image resize_to_square(const Array2D& gray, std::size_t size, double pixel_spacing) {
  if (gray.empty()) throw std::invalid_argument("resize_to_square: empty input");
  if (gray.rows() == size && gray.cols() == size) return Image(gray, pixel_spacing);
  Image out(size, pixel_spacing);
  const double sr = static_cast<double>(gray.rows()) / size;
  const double sc = static_cast<double>(gray.cols()) / size;
  const auto clamp_idx = [](long i, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1));
  };
  for (std::size_t r = 0; r < size; ++r) {
    const double fr = (r + 0.5) * sr - 0.5;
    const double r0 = std::floor(fr);
    const double wr = fr - r0;
    const std::size_t ra = clamp_idx(static_cast<long>(r0), gray.rows());
    const std::size_t rb = clamp_idx(static_cast<long>(r0) + 1, gray.rows());
    for (std::size_t c = 0; c < size; ++c) {
      const double fc = (c + 0.5) * sc - 0.5;
      const double c0 = std::floor(fc);
      const double wc = fc - c0;
      const std::size_t ca = clamp_idx(static_cast<long>(c0), gray.cols());
      const std::size_t cb = clamp_idx(static_cast<long>(c0) + 1, gray.cols());
      out(r, c) = (1 - wr) * ((1 - wc) * gray(ra, ca) + wc * gray(ra, cb)) +
                  wr * ((1 - wc) * gray(rb, ca) + wc * gray(rb, cb));
    }
  }
  return out;
}

Sample make_sample(const Image& gray, const FanBeamGeometry& geom, std::uint64_t seed,
                   const SampleOptions& options) {
  if (static_cast<int>(gray.size()) != geom.image_size()) {
    throw std::invalid_argument("make_sample: image must be resized to the geometry image_size first");
  }
  Rng rng(seed);
  const double drawn_mu = rng.uniform(kSampleMuMin, kSampleMuMax);
  const std::uint64_t mask_seed = rng.next();

  Sample s;
  s.rng_seed = seed;
  s.mu_max = options.mu_max.value_or(drawn_mu);
  s.gt_image = to_attenuation(Image(gray.values(), geom.pixel_spacing()), s.mu_max);
  s.clean_sino = forward_project(s.gt_image, geom);
  s.mask = options.forced_mask ? *options.forced_mask
                               : generate_mask(mask_seed, options.lpp, geom.n_detectors());
  s.corrupted_sino = apply_mask(s.clean_sino, s.mask);
  s.fbp_image = fbp(s.corrupted_sino, geom);
  return s;
}

}  // namespace tomolpp
