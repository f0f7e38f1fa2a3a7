#pragma once

#include "tomolpp/array.hpp"

#include <string>

namespace tomolpp {

/// Fixed orthonormal sparsifying transforms used as G / G^T in the unrolled solver.
enum class TransformKind {
  dct8,   ///< 8x8 blockwise orthonormal DCT-II
  haar1,  ///< single-level orthonormal 2D Haar, subband layout (LL | HL / LH | HH)
};

std::string to_string(TransformKind kind);
TransformKind parse_transform_kind(const std::string& text);

/// Block size the transform works on (8 or 2).
std::size_t transform_block(TransformKind kind);

/// Forward transform. Both dimensions must be multiples of transform_block().
Array2D analyze(const Array2D& x, TransformKind kind);
/// Inverse (= transpose) of analyze().
Array2D synthesize(const Array2D& coeffs, TransformKind kind);

/// Symmetric (edge-inclusive mirror) padding on the bottom/right edges up to
/// the next multiple of `block`.
Array2D pad_symmetric(const Array2D& x, std::size_t block);
Array2D crop(const Array2D& x, std::size_t rows, std::size_t cols);

/// sign(v) * max(|v| - theta, 0).
inline double soft_threshold(double v, double theta) {
  const double mag = (v < 0 ? -v : v) - theta;
  if (mag <= 0.0) return 0.0;
  return v < 0 ? -mag : mag;
}

/// synthesize(soft(analyze(x), theta)), padding and cropping as needed.
Array2D shrink(const Array2D& x, TransformKind kind, double theta);

}  // namespace tomolpp
