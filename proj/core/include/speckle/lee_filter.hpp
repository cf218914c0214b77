#pragma once

#include "speckle/image.hpp"

namespace speckle {

/// Square-window local-statistics (MMSE) filter for multiplicative speckle:
///
///   out = mean + W (z - mean),  W = clamp(1 - Cu^2 / Cz^2, 0, 1)
///
/// with Cu^2 = 1 / nominal_looks and Cz^2 = s^2 / mean^2 over the window
/// (unbiased s^2). Windows with zero mean output 0; zero local variation gives W = 0.
struct LeeSpec {
  int window = 5;
  double nominal_looks = 1.0;

  /// Throws std::invalid_argument unless window is odd and >= 3, nominal_looks finite and >= 1.
  void validate() const;
};

/// Weight W for one window's statistics; exposed for testing the clamp.
[[nodiscard]] double lee_weight(double window_mean, double window_variance, double nominal_looks);

/// Mirror-padded sliding-window Lee filter; same-size output, independent of
/// the thread count. Throws std::invalid_argument if the window exceeds the image.
[[nodiscard]] Raster lee_filter(const Raster& img, const LeeSpec& spec, int threads = 1);

}  // namespace speckle
