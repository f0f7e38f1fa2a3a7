#include "tomolpp/rng.hpp"

#include <stdexcept>

namespace tomolpp {

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be > 0");
  // 2^64 mod n, computed without 128-bit arithmetic.
  const std::uint64_t rem = (~n + 1) % n;
  while (true) {
    const std::uint64_t r = engine_();
    if (rem == 0 || r < ~std::uint64_t{0} - rem + 1) return r % n;
  }
}

long long Rng::uniform_int(long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long long>(engine_());  // full 64-bit range
  return lo + static_cast<long long>(uniform_below(span));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace tomolpp
