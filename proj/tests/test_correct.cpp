#include "tomolpp/correct.hpp"
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

Image smooth_phantom(int n, double ps) {
  Image img(static_cast<std::size_t>(n), ps);
  const double c0 = 0.5 * (n - 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = (c - c0) / (0.3 * n), y = (r - c0) / (0.25 * n);
      const double d2 = x * x + y * y;
      img(r, c) = d2 < 1.0 ? 0.4 * (1.0 - d2) + 0.1 : 0.0;
    }
  }
  return img;
}

double max_abs_diff(const Image& a, const Image& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double residual_norm(const Image& x, const Sinogram& y, const FanBeamGeometry& g) {
  return norm2((forward_project(x, g) - y).data());
}

}  // namespace

TEST_CASE("interpolation is exact on affine rows", "[correct]") {
  Sinogram s(8, 50);
  for (std::size_t v = 0; v < 8; ++v) {
    for (std::size_t c = 0; c < 50; ++c) s(v, c) = 0.3 * static_cast<double>(v + 1) * static_cast<double>(c) - 2.0;
  }
  const LppMask mask({4, 5, 6, 20, 33, 34}, 50);
  const auto out = interpolate_sinogram(apply_mask(s, mask), mask);
  for (std::size_t i = 0; i < s.data().size(); ++i) REQUIRE(std::abs(out.data()[i] - s.data()[i]) < 1e-12);
}

TEST_CASE("interpolation edge cases", "[correct]") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Sinogram s(5, 10);
  for (auto& v : s.data()) v = dist(gen);

  CHECK(interpolate_sinogram(s, LppMask::empty(10)) == s);

  const auto left = interpolate_sinogram(apply_mask(s, LppMask({0}, 10)), LppMask({0}, 10));
  const auto right = interpolate_sinogram(apply_mask(s, LppMask({8, 9}, 10)), LppMask({8, 9}, 10));
  for (std::size_t v = 0; v < 5; ++v) {
    CHECK(left(v, 0) == s(v, 1));
    CHECK(right(v, 8) == s(v, 7));
    CHECK(right(v, 9) == s(v, 7));
  }

  std::vector<int> all(10);
  for (int c = 0; c < 10; ++c) all[c] = c;
  CHECK_THROWS_AS(interpolate_sinogram(s, LppMask(all, 10)), DegenerateInputError);
  CHECK_THROWS_AS(interpolate_sinogram(s, LppMask::empty(11)), std::invalid_argument);
}

TEST_CASE("data consistency step", "[correct]") {
  const auto g = small_geometry(32, 60);
  const auto x = smooth_phantom(32, 1.0);
  const auto mask = LppMask({5, 17}, g.n_detectors());
  const auto y = masked_forward(x, g, mask);

  SECTION("consistent data is a fixed point") {
    CHECK(data_consistency_step(x, y, mask, g, 1.0) == x);
  }
  SECTION("zero step leaves x unchanged") {
    CHECK(data_consistency_step(x, y + y, mask, g, 0.0) == x);
  }
  SECTION("from zero it returns the FBP of the data") {
    const auto out = data_consistency_step(Image(32, 1.0), y, mask, g, 1.0);
    CHECK(max_abs_diff(out, fbp(y, g)) < 1e-12);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(data_consistency_step(Image(31, 1.0), y, mask, g, 1.0), std::invalid_argument);
  }
}

TEST_CASE("data consistency step is affine", "[correct][property]") {
  const auto g = small_geometry(32, 60);
  const auto mask = LppMask({7}, g.n_detectors());
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> dist(0.0, 0.5);
  Image x1(32, 1.0), x2(32, 1.0);
  for (auto& v : x1.data()) v = dist(gen);
  for (auto& v : x2.data()) v = dist(gen);
  const auto y1 = masked_forward(smooth_phantom(32, 1.0), g, mask);
  Sinogram y2(g.n_views(), g.n_detectors());
  for (auto& v : y2.data()) v = dist(gen);
  const double a = 0.3;
  const auto xa = a * x1 + (1.0 - a) * x2;
  const auto ya = a * y1 + (1.0 - a) * y2;
  const auto lhs = data_consistency_step(xa, ya, mask, g, 0.7);
  const auto rhs = a * data_consistency_step(x1, y1, mask, g, 0.7) +
                   (1.0 - a) * data_consistency_step(x2, y2, mask, g, 0.7);
  CHECK(max_abs_diff(lhs, rhs) < 1e-6);
}

TEST_CASE("zero layers return the initialization", "[correct]") {
  const auto g = small_geometry(32, 60);
  const auto mask = LppMask({9, 10}, g.n_detectors());
  const auto y = masked_forward(smooth_phantom(32, 1.0), g, mask);
  IstaConfig cfg;
  for (auto init : {IstaInit::fbp_of_observed, IstaInit::interpolation_then_fbp}) {
    cfg.init = init;
    CHECK(ista_correct(y, mask, g, cfg) == ista_initialize(y, mask, g, init));
  }
  CHECK(ista_initialize(y, mask, g, IstaInit::fbp_of_observed) == fbp(y, g));
  CHECK(ista_initialize(y, mask, g, IstaInit::interpolation_then_fbp) == fbp(interpolate_sinogram(y, mask), g));
}

TEST_CASE("zero thresholds never increase the residual", "[correct][property]") {
  const auto g = small_geometry(48, 120);
  const auto y = forward_project(smooth_phantom(48, 1.0), g);
  const auto mask = LppMask::empty(g.n_detectors());
  auto cfg = IstaConfig::geometric(8, 0.5, 0.0, 1.0);
  cfg.init = IstaInit::fbp_of_observed;
  std::vector<double> residuals{residual_norm(fbp(y, g), y, g)};
  ista_correct(y, mask, g, cfg, [&](std::size_t, const Image& x) { residuals.push_back(residual_norm(x, y, g)); });
  REQUIRE(residuals.size() == 9);
  for (std::size_t k = 1; k < residuals.size(); ++k) CHECK(residuals[k] <= residuals[k - 1] + 1e-9);
}

TEST_CASE("one unthresholded layer reduces the residual on Shepp-Logan", "[correct]") {
  FanBeamGeometry::Params p;
  p.image_size = 256;
  p.pixel_spacing = 2.0;
  const FanBeamGeometry g(p);
  const auto y = forward_project(shepp_logan(256, 2.0), g);
  const auto mask = LppMask::empty(g.n_detectors());
  const auto x0 = fbp(y, g);
  auto cfg = IstaConfig::geometric(1, 1.0, 0.0, 1.0);
  const auto x1 = ista_iterate(x0, y, mask, g, cfg);
  CHECK(max_abs_diff(x1, x0 - fbp(forward_project(x0, g) - y, g)) < 1e-12);
  CHECK(residual_norm(x1, y, g) < residual_norm(x0, y, g));
}

TEST_CASE("ista is deterministic", "[correct]") {
  const auto g = small_geometry(32, 60);
  const auto mask = LppMask({4, 12, 13}, g.n_detectors());
  const auto y = masked_forward(smooth_phantom(32, 1.0), g, mask);
  auto cfg = IstaConfig::geometric(3, 1.0, 0.01, 0.8);
  const auto a = ista_correct(y, mask, g, cfg);
  const auto b = ista_correct(y, mask, g, cfg);
  CHECK(a == b);
  cfg.transform = TransformKind::haar1;
  CHECK(ista_correct(y, mask, g, cfg) == ista_correct(y, mask, g, cfg));
}

TEST_CASE("ista config", "[correct]") {
  const auto def = IstaConfig::defaults();
  CHECK(def.n_layers() == kDefaultLayers);
  CHECK(def.thresholds.front() == kDefaultTheta0);
  for (double rho : def.step_sizes) CHECK(rho == 1.0);
  CHECK_NOTHROW(def.validate());

  const auto geo = IstaConfig::geometric(3, 0.5, 0.02, 0.5);
  CHECK(geo.thresholds == std::vector<double>{0.02, 0.01, 0.005});

  const auto round = ista_config_from_key_values(KeyValueFile::parse(to_key_values(def).to_string()));
  CHECK(round.step_sizes == def.step_sizes);
  CHECK(round.thresholds == def.thresholds);
  CHECK(round.transform == def.transform);
  CHECK(round.init == def.init);

  const auto broadcast = ista_config_from_key_values(
      KeyValueFile::parse("n_layers = 4\nstep_sizes = 0.5\nthresholds = 0.1\ntransform = haar1\n"));
  CHECK(broadcast.step_sizes == std::vector<double>(4, 0.5));
  CHECK(broadcast.thresholds == std::vector<double>(4, 0.1));
  CHECK(broadcast.transform == TransformKind::haar1);

  const auto schedule = ista_config_from_key_values(KeyValueFile::parse("n_layers = 2\ntheta0 = 0.1\ntheta_decay = 0.5\n"));
  CHECK(schedule.thresholds == std::vector<double>{0.1, 0.05});

  CHECK_THROWS_AS(ista_config_from_key_values(KeyValueFile::parse("n_layers = 3\nthresholds = 0.1,0.2\n")), ConfigError);
  CHECK_THROWS_AS(ista_config_from_key_values(KeyValueFile::parse("step = 1\n")), ConfigError);
  CHECK_THROWS(ista_config_from_key_values(KeyValueFile::parse("step_sizes = 0\n")));
  CHECK_THROWS(ista_config_from_key_values(KeyValueFile::parse("thresholds = -1\n")));
  CHECK_THROWS(ista_config_from_key_values(KeyValueFile::parse("init = zeros\n")));
}
