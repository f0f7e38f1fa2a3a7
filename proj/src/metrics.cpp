#include "tomolpp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tomolpp {

namespace {

std::vector<double> gaussian_window() {
  std::vector<double> w(kSsimWindow);
  const int half = kSsimWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - half;
    w[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Separable valid-mode Gaussian filter.
Array2D filter_valid(const Array2D& in, const std::vector<double>& w) {
  const std::size_t k = w.size();
  const std::size_t rows = in.rows() - k + 1;
  const std::size_t cols = in.cols() - k + 1;
  Array2D horizontal(in.rows(), cols);
  for (std::size_t r = 0; r < in.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += w[t] * in(r, c + t);
      horizontal(r, c) = acc;
    }
  }
  Array2D out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += w[t] * horizontal(r + t, c);
      out(r, c) = acc;
    }
  }
  return out;
}

bool in_fov(std::size_t r, std::size_t c, std::size_t n) {
  const double c0 = 0.5 * (static_cast<double>(n) - 1.0);
  const double dr = r - c0;
  const double dc = c - c0;
  return dr * dr + dc * dc <= 0.25 * static_cast<double>(n) * static_cast<double>(n);
}

}  // namespace

// Written as a ratio minus one so water and air land exactly on 0 and -1000.
double mu_to_hu(double mu) { return 1000.0 * ((mu - kMuAir) / (kMuWater - kMuAir)) - 1000.0; }

Image mu_to_hu(const Image& image) {
  Image out(image);
  for (double& v : out.data()) v = mu_to_hu(v);
  return out;
}

Array2D ssim_map(const Array2D& x, const Array2D& y, double dynamic_range) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("ssim: shape mismatch");
  if (x.rows() < static_cast<std::size_t>(kSsimWindow) || x.cols() < static_cast<std::size_t>(kSsimWindow)) {
    throw std::invalid_argument("ssim: image smaller than the 11x11 window");
  }
  if (!(dynamic_range > 0.0)) throw DegenerateInputError("ssim: dynamic range must be > 0");
  const auto w = gaussian_window();
  Array2D xx(x.rows(), x.cols()), yy(x.rows(), x.cols()), xy(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx.values()[i] = x.values()[i] * x.values()[i];
    yy.values()[i] = y.values()[i] * y.values()[i];
    xy.values()[i] = x.values()[i] * y.values()[i];
  }
  const Array2D mx = filter_valid(x, w);
  const Array2D my = filter_valid(y, w);
  const Array2D exx = filter_valid(xx, w);
  const Array2D eyy = filter_valid(yy, w);
  const Array2D exy = filter_valid(xy, w);

  const double c1 = (kSsimK1 * dynamic_range) * (kSsimK1 * dynamic_range);
  const double c2 = (kSsimK2 * dynamic_range) * (kSsimK2 * dynamic_range);
  Array2D out(mx.rows(), mx.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ux = mx.values()[i];
    const double uy = my.values()[i];
    const double vx = exx.values()[i] - ux * ux;
    const double vy = eyy.values()[i] - uy * uy;
    const double cxy = exy.values()[i] - ux * uy;
    out.values()[i] = ((2.0 * ux * uy + c1) * (2.0 * cxy + c2)) / ((ux * ux + uy * uy + c1) * (vx + vy + c2));
  }
  return out;
}

MetricReport evaluate(const Image& pred, const Image& gt, const MetricOptions& options) {
  if (pred.size() != gt.size()) throw std::invalid_argument("evaluate: image sizes differ");
  const Image p = mu_to_hu(pred);
  const Image g = mu_to_hu(gt);
  const std::size_t n = g.size();

  double range = 0.0;
  if (options.psnr_range) {
    range = *options.psnr_range;
  } else {
    const auto [lo, hi] = std::minmax_element(g.data().begin(), g.data().end());
    range = *hi - *lo;
  }
  if (!(range > 0.0)) throw DegenerateInputError("evaluate: ground truth has zero dynamic range");

  double abs_sum = 0.0;
  double sq_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (options.fov_only && !in_fov(r, c, n)) continue;
      const double d = p(r, c) - g(r, c);
      abs_sum += std::abs(d);
      sq_sum += d * d;
      ++count;
    }
  }
  MetricReport report;
  report.mae_hu = abs_sum / count;
  const double mse = sq_sum / count;
  report.psnr_db = mse == 0.0 ? std::numeric_limits<double>::infinity()
                              : 10.0 * std::log10(range * range / mse);

  const Array2D map = ssim_map(p.values(), g.values(), range);
  const std::size_t offset = kSsimWindow / 2;
  double ssim_sum = 0.0;
  std::size_t ssim_count = 0;
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      if (options.fov_only && !in_fov(r + offset, c + offset, n)) continue;
      ssim_sum += map(r, c);
      ++ssim_count;
    }
  }
  report.ssim = ssim_sum / ssim_count;
  return report;
}

}  // namespace tomolpp
