#include "tomolpp/projector.hpp"
#include "tomolpp/synth.hpp"

#include "support/small_geometry.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace tomolpp;
using tomolpp::testing::small_geometry;

namespace {

Image random_image(std::size_t n, double ps, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Image img(n, ps);
  for (auto& v : img.data()) v = dist(gen);
  return img;
}

Sinogram random_sinogram(const FanBeamGeometry& g, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Sinogram s(g.n_views(), g.n_detectors());
  for (auto& v : s.data()) v = dist(gen);
  return s;
}

// Perpendicular distance from point p to the line through a and b.
double distance_to_line(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  return std::abs((p.x - a.x) * dy - (p.y - a.y) * dx) / std::hypot(dx, dy);
}

// Line integral of the analytic disk by marching along the ray in steps of
// 0.1 pixel, counting the midpoint of every step that falls inside.
double march_disk(Point2 a, Point2 b, double radius, double mu, double step) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const auto n = static_cast<long>(std::ceil(len / step));
  const double h = len / n;
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    const double x = a.x + t * (b.x - a.x), y = a.y + t * (b.y - a.y);
    if (x * x + y * y <= radius * radius) sum += mu * h;
  }
  return sum;
}

}  // namespace

TEST_CASE("zero in, zero out", "[projector]") {
  const auto g = small_geometry(32);
  const Image zero(32, 1.0);
  const auto s = forward_project(zero, g);
  for (double v : s.data()) REQUIRE(v == 0.0);
  const Sinogram zs(g.n_views(), g.n_detectors());
  const auto back = backproject(zs, g);
  for (double v : back.data()) REQUIRE(v == 0.0);
  const auto rec = fbp(zs, g);
  for (double v : rec.data()) REQUIRE(v == 0.0);
}

TEST_CASE("dimension mismatches are rejected", "[projector]") {
  const auto g = small_geometry(32);
  CHECK_THROWS_AS(forward_project(Image(31, 1.0), g), std::invalid_argument);
  CHECK_THROWS_AS(forward_project(Image(32, 2.0), g), std::invalid_argument);
  CHECK_THROWS_AS(backproject(Sinogram(g.n_views(), g.n_detectors() + 1), g), std::invalid_argument);
  CHECK_THROWS_AS(fbp(Sinogram(g.n_views() - 1, g.n_detectors()), g), std::invalid_argument);
}

TEST_CASE("disk ray sums match the analytic chord and a marching oracle", "[projector]") {
  const int n = 256;
  const double radius = 100.0, mu = 0.5;
  const auto g = small_geometry(n, 90);
  const auto sino = forward_project(disk_phantom(n, radius, mu), g);
  int checked = 0;
  for (int v = 0; v < g.n_views(); v += 9) {
    for (int c = 0; c < g.n_detectors(); ++c) {
      const auto ray = g.ray_endpoints(v, c);
      const double d = distance_to_line({0.0, 0.0}, ray.source, ray.detector);
      if (d > 0.9 * radius) continue;
      const double chord = 2.0 * mu * std::sqrt(radius * radius - d * d);
      const double marched = march_disk(ray.source, ray.detector, radius, mu, 0.1);
      REQUIRE(std::abs(marched - chord) <= 0.01 * chord);
      REQUIRE(std::abs(sino(v, c) - chord) <= 0.01 * chord);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("centered disk projects the same in every view", "[projector][property]") {
  const int n = 256;
  const double radius = 100.0;
  const auto g = small_geometry(n, 60);
  const auto sino = forward_project(disk_phantom(n, radius, 0.5), g);
  for (int c = 0; c < g.n_detectors(); ++c) {
    const auto ray = g.ray_endpoints(0, c);
    if (distance_to_line({0.0, 0.0}, ray.source, ray.detector) > 0.9 * radius) continue;
    for (int v = 1; v < g.n_views(); ++v) REQUIRE(std::abs(sino(v, c) - sino(0, c)) <= 1e-2 * sino(0, c));
  }
}

TEST_CASE("backprojection is the transpose of forward projection", "[projector][property]") {
  for (int n : {32, 64, 128}) {
    const auto g = small_geometry(n, 90);
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto x = random_image(n, 1.0, 100 + k);
      const auto y = random_sinogram(g, 200 + k);
      const double lhs = dot(forward_project(x, g).data(), y.data());
      const double rhs = dot(x.data(), backproject(y, g).data());
      REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
    }
  }
}

TEST_CASE("backprojecting a single bin gives the matching row of the system matrix", "[projector]") {
  const int n = 12;
  const auto g = small_geometry(n, 16);
  // Columns of A, one pixel at a time.
  std::vector<Sinogram> columns;
  for (int i = 0; i < n * n; ++i) {
    Image e(n, 1.0);
    e.data()[i] = 1.0;
    columns.push_back(forward_project(e, g));
  }
  for (int v : {0, 5, 11}) {
    for (int c : {3, 10, 14}) {
      Sinogram bin(g.n_views(), g.n_detectors());
      bin(v, c) = 1.0;
      const auto img = backproject(bin, g);
      for (int i = 0; i < n * n; ++i) REQUIRE(img.data()[i] == Catch::Approx(columns[i](v, c)).margin(1e-14));
    }
  }
}

TEST_CASE("projectors are linear", "[projector][property]") {
  const auto g = small_geometry(48, 60);
  const auto a = random_image(48, 1.0, 1);
  const auto b = random_image(48, 1.0, 2);
  const auto combo = 2.0 * a - 0.5 * b;
  const auto lhs = forward_project(combo, g);
  const auto rhs = 2.0 * forward_project(a, g) - 0.5 * forward_project(b, g);
  for (std::size_t i = 0; i < lhs.data().size(); ++i) REQUIRE(std::abs(lhs.data()[i] - rhs.data()[i]) < 1e-6);

  const auto sa = random_sinogram(g, 3);
  const auto sb = random_sinogram(g, 4);
  const auto scombo = 3.0 * sa + (-1.0) * sb;
  const auto bl = backproject(scombo, g);
  const auto br = 3.0 * backproject(sa, g) - backproject(sb, g);
  for (std::size_t i = 0; i < bl.data().size(); ++i) REQUIRE(std::abs(bl.data()[i] - br.data()[i]) < 1e-6);
  const auto fl = fbp(scombo, g);
  const auto fr = 3.0 * fbp(sa, g) - fbp(sb, g);
  for (std::size_t i = 0; i < fl.data().size(); ++i) REQUIRE(std::abs(fl.data()[i] - fr.data()[i]) < 1e-6);
}

TEST_CASE("rays that miss the support read exactly zero", "[projector][property]") {
  const int n = 64;
  const auto g = small_geometry(n, 72);
  // Small square blob centered at (+20, -15) pixels from the isocenter.
  Image img(n, 1.0);
  const double c0 = 0.5 * (n - 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (std::abs(c - c0 - 20.0) <= 3.0 && std::abs(r - c0 + 15.0) <= 3.0) img(r, c) = 1.0;
    }
  }
  const auto sino = forward_project(img, g);
  const Point2 center{20.0, -15.0};
  int misses = 0;
  for (int v = 0; v < g.n_views(); ++v) {
    for (int c = 0; c < g.n_detectors(); ++c) {
      const auto ray = g.ray_endpoints(v, c);
      // Blob half-diagonal plus one pixel of interpolation reach.
      if (distance_to_line(center, ray.source, ray.detector) > 3.5 * std::sqrt(2.0) + 1.5) {
        REQUIRE(sino(v, c) == 0.0);
        ++misses;
      }
    }
  }
  CHECK(misses > g.n_views() * g.n_detectors() / 2);
}

TEST_CASE("FBP reproduces the interior of a disk", "[projector]") {
  FanBeamGeometry::Params p;
  p.image_size = 256;
  p.pixel_spacing = 2.0;
  const FanBeamGeometry g(p);
  const auto img = fbp(forward_project(disk_phantom(256, 60.0, 0.5, 2.0), g), g);
  double mean = 0.0;
  for (int r = 123; r < 133; ++r) {
    for (int c = 123; c < 133; ++c) mean += img(r, c) / 100.0;
  }
  CHECK(mean >= 0.49);
  CHECK(mean <= 0.51);
}

TEST_CASE("FBP round trip on a smooth phantom", "[projector]") {
  const int n = 128;
  const auto g = small_geometry(n, 360, 1.0);
  Image smooth(n, 1.0);
  const double c0 = 0.5 * (n - 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = (c - c0) / 40.0, y = (r - c0) / 30.0;
      smooth(r, c) = 0.5 * std::exp(-(x * x + y * y)) + 0.2 * std::exp(-((x - 0.6) * (x - 0.6) + y * y) * 6.0);
    }
  }
  const auto rec = fbp(forward_project(smooth, g), g);
  double err = 0.0, ref = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (std::hypot(r - c0, c - c0) > 0.9 * n / 2) continue;
      err += (rec(r, c) - smooth(r, c)) * (rec(r, c) - smooth(r, c));
      ref += smooth(r, c) * smooth(r, c);
    }
  }
  CHECK(std::sqrt(err / ref) <= 0.05);
}
