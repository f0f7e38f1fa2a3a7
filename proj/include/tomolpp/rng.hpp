#pragma once

#include <cstdint>
#include <random>

namespace tomolpp {

/// Seeded random stream with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms are
/// implementation-defined), so the draws below are spelled out:
///   - uniform_below(n): rejection sampling on the top of the 64-bit range,
///     discarding raw values >= 2^64 - (2^64 mod n), then raw % n.
///   - uniform01(): (raw >> 11) * 2^-53, in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  long long uniform_int(long long lo, long long hi);
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tomolpp
