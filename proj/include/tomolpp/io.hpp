#pragma once

#include "tomolpp/array.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace tomolpp {

/// Unreadable, unwritable or malformed data files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw array files: the ASCII line `TOMO1 <rows> <cols> f32 row-major\n`
/// followed by rows*cols little-endian IEEE-754 binary32 values.
/// Values are narrowed to float on write.
void write_array(const std::filesystem::path& path, const Array2D& values);
Array2D read_array(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

/// Binary PGM (P5) or PPM (P6), 8 or 16 bit. Color is reduced to luminance.
/// Returns raw intensities (0..maxval).
Array2D read_pnm(const std::filesystem::path& path);
/// 8-bit binary PGM of values already in [0, 255] (rounded, clamped).
void write_pgm8(const std::filesystem::path& path, const Array2D& values);

/// 16-bit PGM preview: `lo` maps to 0, `hi` to 65535, linear in between, clamped.
void write_pgm16_preview(const std::filesystem::path& path, const Array2D& values, double lo, double hi);

}  // namespace tomolpp
