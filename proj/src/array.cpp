#include "tomolpp/array.hpp"

#include <cmath>
#include <string>

namespace tomolpp {

namespace {

void require_same_shape(const Array2D& a, const Array2D& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

void add_into(Array2D& a, const Array2D& b, double scale) {
  auto dst = a.values();
  auto src = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
}

void scale_in_place(Array2D& a, double s) {
  for (double& v : a.values()) v *= s;
}

}  // namespace

Array2D::Array2D(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Image::Image(std::size_t size, double pixel_spacing)
    : values_(size, size), pixel_spacing_(pixel_spacing) {
  if (size == 0) throw std::invalid_argument("Image: size must be >= 1");
  if (!(pixel_spacing > 0.0)) throw std::invalid_argument("Image: pixel_spacing must be > 0");
}

Image::Image(Array2D values, double pixel_spacing)
    : values_(std::move(values)), pixel_spacing_(pixel_spacing) {
  if (values_.rows() == 0 || values_.rows() != values_.cols()) {
    throw std::invalid_argument("Image: grid must be square and non-empty");
  }
  if (!(pixel_spacing > 0.0)) throw std::invalid_argument("Image: pixel_spacing must be > 0");
}

Image& Image::operator+=(const Image& other) {
  require_same_shape(values_, other.values_, "Image +=");
  add_into(values_, other.values_, 1.0);
  return *this;
}

Image& Image::operator-=(const Image& other) {
  require_same_shape(values_, other.values_, "Image -=");
  add_into(values_, other.values_, -1.0);
  return *this;
}

Image& Image::operator*=(double s) {
  scale_in_place(values_, s);
  return *this;
}

Sinogram::Sinogram(std::size_t n_views, std::size_t n_detectors)
    : values_(n_views, n_detectors) {}

Sinogram::Sinogram(Array2D values) : values_(std::move(values)) {}

Sinogram& Sinogram::operator+=(const Sinogram& other) {
  require_same_shape(values_, other.values_, "Sinogram +=");
  add_into(values_, other.values_, 1.0);
  return *this;
}

Sinogram& Sinogram::operator-=(const Sinogram& other) {
  require_same_shape(values_, other.values_, "Sinogram -=");
  add_into(values_, other.values_, -1.0);
  return *this;
}

Sinogram& Sinogram::operator*=(double s) {
  scale_in_place(values_, s);
  return *this;
}

Image operator+(Image a, const Image& b) { return a += b; }
Image operator-(Image a, const Image& b) { return a -= b; }
Image operator*(double s, Image a) { return a *= s; }
Sinogram operator+(Sinogram a, const Sinogram& b) { return a += b; }
Sinogram operator-(Sinogram a, const Sinogram& b) { return a -= b; }
Sinogram operator*(double s, Sinogram a) { return a *= s; }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

bool all_finite(std::span<const double> a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace tomolpp
