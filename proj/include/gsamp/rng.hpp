#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

namespace gsamp {

// SplitMix64 finalizer. Used to derive decorrelated engine seeds from a
// master seed plus a tuple of stream keys.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic random stream. One instance per sequential task; never
/// shared across threads. Distributions are implemented here rather than
/// taken from <random> so that a given seed produces the same sequence on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream addressed by (master, keys...). Streams with
  /// different key tuples are decorrelated even for adjacent master seeds.
  static Rng substream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t k : keys) s = mix64(s ^ k);
    return Rng(s);
  }

  std::uint64_t raw() { return engine_(); }

  /// Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller, one variate per call.
  double normal() {
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  /// Uniform integer in [0, n), unbiased (rejection sampling).
  int uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t nn = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (-nn) % nn;  // 2^64 mod n
    std::uint64_t r;
    do {
      r = engine_();
    } while (r < threshold);
    return static_cast<int>(r % nn);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gsamp
