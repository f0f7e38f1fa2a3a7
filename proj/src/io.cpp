#include "tomolpp/io.hpp"

#include "tomolpp/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

namespace tomolpp {

namespace {

constexpr const char* kMagic = "TOMO1";

void put_le32(std::string& out, float f) {
  auto bits = std::bit_cast<std::uint32_t>(f);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
}

float get_le32(const unsigned char* p) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) bits |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return std::bit_cast<float>(bits);
}

// Next whitespace-delimited PNM header token, skipping '#' comments.
std::string pnm_token(const std::string& data, std::size_t& pos) {
  while (pos < data.size()) {
    if (data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
  return data.substr(start, pos - start);
}

long parse_positive(const std::string& token, const std::filesystem::path& path, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used == token.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw IoError(path.string() + ": bad " + what + " '" + token + "'");
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move '" + tmp.string() + "' into place");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_array(const std::filesystem::path& path, const Array2D& values) {
  std::string out = std::string(kMagic) + " " + std::to_string(values.rows()) + " " +
                    std::to_string(values.cols()) + " f32 row-major\n";
  out.reserve(out.size() + 4 * values.size());
  for (double v : values.values()) put_le32(out, static_cast<float>(v));
  write_file_atomic(path, out);
}

Array2D read_array(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  const auto nl = data.find('\n');
  if (nl == std::string::npos) throw IoError(path.string() + ": missing TOMO1 header line");
  std::istringstream header(data.substr(0, nl));
  std::string magic, dtype, order;
  long long rows = -1, cols = -1;
  header >> magic >> rows >> cols >> dtype >> order;
  if (magic != kMagic || dtype != "f32" || order != "row-major" || rows < 0 || cols < 0) {
    throw IoError(path.string() + ": not a 'TOMO1 <rows> <cols> f32 row-major' file");
  }
  const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (data.size() - nl - 1 != 4 * count) {
    throw IoError(path.string() + ": payload size does not match header");
  }
  Array2D out(rows, cols);
  const auto* p = reinterpret_cast<const unsigned char*>(data.data() + nl + 1);
  auto dst = out.values();
  for (std::size_t i = 0; i < count; ++i) dst[i] = get_le32(p + 4 * i);
  return out;
}

Array2D read_pnm(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  std::size_t pos = 0;
  const std::string magic = pnm_token(data, pos);
  if (magic != "P5" && magic != "P6") throw IoError(path.string() + ": only binary P5/P6 images are supported");
  const long width = parse_positive(pnm_token(data, pos), path, "width");
  const long height = parse_positive(pnm_token(data, pos), path, "height");
  const long maxval = parse_positive(pnm_token(data, pos), path, "maxval");
  if (maxval > 65535) throw IoError(path.string() + ": maxval above 65535");
  ++pos;  // single whitespace byte before the raster

  const int channels = magic == "P6" ? 3 : 1;
  const int bytes = maxval > 255 ? 2 : 1;
  const std::size_t need = static_cast<std::size_t>(width) * height * channels * bytes;
  if (pos > data.size() || data.size() - pos < need) throw IoError(path.string() + ": truncated raster");
  const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos);
  const auto sample = [&](std::size_t i) -> double {
    return bytes == 1 ? p[i] : static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]);
  };
  Array2D out(height, width);
  for (long r = 0; r < height; ++r) {
    for (long c = 0; c < width; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * width + c;
      out(r, c) = channels == 1 ? sample(idx)
                                : luminance(sample(3 * idx), sample(3 * idx + 1), sample(3 * idx + 2));
    }
  }
  return out;
}

void write_pgm8(const std::filesystem::path& path, const Array2D& values) {
  std::string out = "P5\n" + std::to_string(values.cols()) + " " + std::to_string(values.rows()) + "\n255\n";
  for (double v : values.values()) {
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L))));
  }
  write_file_atomic(path, out);
}

void write_pgm16_preview(const std::filesystem::path& path, const Array2D& values, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("preview window must satisfy hi > lo");
  std::string out = "P5\n" + std::to_string(values.cols()) + " " + std::to_string(values.rows()) + "\n65535\n";
  for (double v : values.values()) {
    const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
    const auto level = static_cast<std::uint16_t>(std::lround(t * 65535.0));
    out.push_back(static_cast<char>(level >> 8));
    out.push_back(static_cast<char>(level & 0xFF));
  }
  write_file_atomic(path, out);
}

}  // namespace tomolpp
