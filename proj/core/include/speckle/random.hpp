#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace speckle {

/// Version tag of the variate generators below. Bump whenever any draw sequence
/// changes; seeded Monte Carlo results are only comparable within one version.
inline constexpr int kVariateAlgorithmVersion = 1;

/// Mixes a master seed with stream coordinates (situation, replicate, ...) into
/// a 64-bit engine seed using SplitMix64 finalization at each step.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept;

/// Independent, reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random>, whose algorithms are implementation-defined:
///   - uniform: top 53 bits of one engine word, mapped into (0, 1);
///   - normal: Marsaglia polar method, spare value cached;
///   - gamma: Marsaglia-Tsang (2000) squeeze/rejection for shape >= 1, with the
///     U^(1/shape) boost for shape < 1.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
      : engine_(derive_seed(master, keys)) {}

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Gamma with the given shape and unit scale (mean = shape).
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace speckle
