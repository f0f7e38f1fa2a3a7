#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tomolpp {

/// Raised when an input has no meaningful result (all-zero image, every
/// channel dead, constant ground truth, ...). Distinct from argument errors
/// so the CLI can report it as a data problem.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major grid of doubles.
class Array2D {
 public:
  Array2D() = default;
  Array2D(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool operator==(const Array2D&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square attenuation map. Pixel (row, col) has its center at
/// x = (col - (size-1)/2) * pixel_spacing, y = (row - (size-1)/2) * pixel_spacing,
/// so the isocenter sits at the middle of the grid.
class Image {
 public:
  Image() = default;
  explicit Image(std::size_t size, double pixel_spacing = 1.0);
  Image(Array2D values, double pixel_spacing);

  std::size_t size() const { return values_.rows(); }
  double pixel_spacing() const { return pixel_spacing_; }

  double& operator()(std::size_t r, std::size_t c) { return values_(r, c); }
  double operator()(std::size_t r, std::size_t c) const { return values_(r, c); }

  Array2D& values() { return values_; }
  const Array2D& values() const { return values_; }
  std::span<double> data() { return values_.values(); }
  std::span<const double> data() const { return values_.values(); }

  Image& operator+=(const Image& other);
  Image& operator-=(const Image& other);
  Image& operator*=(double s);

  bool operator==(const Image&) const = default;

 private:
  Array2D values_;
  double pixel_spacing_ = 1.0;
};

/// Line integrals indexed by (view, detector channel).
class Sinogram {
 public:
  Sinogram() = default;
  Sinogram(std::size_t n_views, std::size_t n_detectors);
  explicit Sinogram(Array2D values);

  std::size_t n_views() const { return values_.rows(); }
  std::size_t n_detectors() const { return values_.cols(); }

  double& operator()(std::size_t v, std::size_t c) { return values_(v, c); }
  double operator()(std::size_t v, std::size_t c) const { return values_(v, c); }

  std::span<double> view(std::size_t v) { return values_.row(v); }
  std::span<const double> view(std::size_t v) const { return values_.row(v); }

  Array2D& values() { return values_; }
  const Array2D& values() const { return values_; }
  std::span<double> data() { return values_.values(); }
  std::span<const double> data() const { return values_.values(); }

  Sinogram& operator+=(const Sinogram& other);
  Sinogram& operator-=(const Sinogram& other);
  Sinogram& operator*=(double s);

  bool operator==(const Sinogram&) const = default;

 private:
  Array2D values_;
};

Image operator+(Image a, const Image& b);
Image operator-(Image a, const Image& b);
Image operator*(double s, Image a);
Sinogram operator+(Sinogram a, const Sinogram& b);
Sinogram operator-(Sinogram a, const Sinogram& b);
Sinogram operator*(double s, Sinogram a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
bool all_finite(std::span<const double> a);

}  // namespace tomolpp
