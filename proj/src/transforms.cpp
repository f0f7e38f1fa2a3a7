#include "tomolpp/transforms.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomolpp {

namespace {

using Block8 = std::array<std::array<double, 8>, 8>;

const Block8& dct8_matrix() {
  static const Block8 m = [] {
    Block8 c{};
    for (int k = 0; k < 8; ++k) {
      const double alpha = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int n = 0; n < 8; ++n) c[k][n] = alpha * std::cos(std::numbers::pi * (2 * n + 1) * k / 16.0);
    }
    return c;
  }();
  return m;
}

void check_divisible(const Array2D& x, std::size_t block) {
  if (x.rows() % block != 0 || x.cols() % block != 0) {
    throw std::invalid_argument("transform: dimensions must be multiples of " + std::to_string(block));
  }
}

// out = C * in * C^T when forward, C^T * in * C otherwise, for one 8x8 block.
void dct_block(const Array2D& in, Array2D& out, std::size_t r0, std::size_t c0, bool forward) {
  const auto& c = dct8_matrix();
  double tmp[8][8];
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) {
        acc += (forward ? c[i][k] : c[k][i]) * in(r0 + k, c0 + j);
      }
      tmp[i][j] = acc;
    }
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += tmp[i][k] * (forward ? c[j][k] : c[k][j]);
      out(r0 + i, c0 + j) = acc;
    }
  }
}

Array2D dct8(const Array2D& x, bool forward) {
  check_divisible(x, 8);
  Array2D out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); r += 8) {
    for (std::size_t c = 0; c < x.cols(); c += 8) dct_block(x, out, r, c, forward);
  }
  return out;
}

Array2D haar_forward(const Array2D& x) {
  check_divisible(x, 2);
  const std::size_t hr = x.rows() / 2;
  const std::size_t hc = x.cols() / 2;
  Array2D out(x.rows(), x.cols());
  for (std::size_t p = 0; p < hr; ++p) {
    for (std::size_t q = 0; q < hc; ++q) {
      const double a = x(2 * p, 2 * q), b = x(2 * p, 2 * q + 1);
      const double c = x(2 * p + 1, 2 * q), d = x(2 * p + 1, 2 * q + 1);
      out(p, q) = 0.5 * (a + b + c + d);
      out(p, q + hc) = 0.5 * (a - b + c - d);
      out(p + hr, q) = 0.5 * (a + b - c - d);
      out(p + hr, q + hc) = 0.5 * (a - b - c + d);
    }
  }
  return out;
}

Array2D haar_inverse(const Array2D& y) {
  check_divisible(y, 2);
  const std::size_t hr = y.rows() / 2;
  const std::size_t hc = y.cols() / 2;
  Array2D out(y.rows(), y.cols());
  for (std::size_t p = 0; p < hr; ++p) {
    for (std::size_t q = 0; q < hc; ++q) {
      const double ll = y(p, q), hl = y(p, q + hc), lh = y(p + hr, q), hh = y(p + hr, q + hc);
      out(2 * p, 2 * q) = 0.5 * (ll + hl + lh + hh);
      out(2 * p, 2 * q + 1) = 0.5 * (ll - hl + lh - hh);
      out(2 * p + 1, 2 * q) = 0.5 * (ll + hl - lh - hh);
      out(2 * p + 1, 2 * q + 1) = 0.5 * (ll - hl - lh + hh);
    }
  }
  return out;
}

// Mirror index into [0, n) with edge repetition: ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
std::size_t mirror(std::size_t i, std::size_t n) {
  const std::size_t period = 2 * n;
  i %= period;
  return i < n ? i : period - 1 - i;
}

}  // namespace

std::string to_string(TransformKind kind) { return kind == TransformKind::dct8 ? "dct8" : "haar1"; }

TransformKind parse_transform_kind(const std::string& text) {
  if (text == "dct8") return TransformKind::dct8;
  if (text == "haar1") return TransformKind::haar1;
  throw std::invalid_argument("unknown transform '" + text + "' (expected dct8 or haar1)");
}

std::size_t transform_block(TransformKind kind) { return kind == TransformKind::dct8 ? 8 : 2; }

Array2D analyze(const Array2D& x, TransformKind kind) {
  return kind == TransformKind::dct8 ? dct8(x, true) : haar_forward(x);
}

Array2D synthesize(const Array2D& coeffs, TransformKind kind) {
  return kind == TransformKind::dct8 ? dct8(coeffs, false) : haar_inverse(coeffs);
}

Array2D pad_symmetric(const Array2D& x, std::size_t block) {
  const std::size_t rows = (x.rows() + block - 1) / block * block;
  const std::size_t cols = (x.cols() + block - 1) / block * block;
  if (rows == x.rows() && cols == x.cols()) return x;
  Array2D out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = x(mirror(r, x.rows()), mirror(c, x.cols()));
  }
  return out;
}

Array2D crop(const Array2D& x, std::size_t rows, std::size_t cols) {
  if (rows > x.rows() || cols > x.cols()) throw std::invalid_argument("crop: target larger than source");
  if (rows == x.rows() && cols == x.cols()) return x;
  Array2D out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = x(r, c);
  }
  return out;
}

Array2D shrink(const Array2D& x, TransformKind kind, double theta) {
  if (!(theta >= 0.0)) throw std::invalid_argument("shrink: theta must be >= 0");
  auto coeffs = analyze(pad_symmetric(x, transform_block(kind)), kind);
  for (double& v : coeffs.values()) v = soft_threshold(v, theta);
  return crop(synthesize(coeffs, kind), x.rows(), x.cols());
}

}  // namespace tomolpp
