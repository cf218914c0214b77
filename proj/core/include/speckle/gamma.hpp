#pragma once

#include <cstddef>

#include "speckle/image.hpp"
#include "speckle/random.hpp"

namespace speckle {

/// Upper clamp on the estimated number of looks. Nearly dispersion-free samples
/// would otherwise drive the estimate to infinity.
inline constexpr double kMaxLooks = 1.0e4;

/// Gamma speckle law Z ~ Gamma(L, L / lambda): mean lambda, variance lambda^2 / L.
class GammaParams {
 public:
  /// Throws std::invalid_argument unless 1 <= looks <= kMaxLooks and mean > 0, both finite.
  GammaParams(double looks, double mean);

  [[nodiscard]] double looks() const noexcept { return looks_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }

  friend bool operator==(const GammaParams&, const GammaParams&) = default;

 private:
  double looks_;
  double mean_;
};

[[nodiscard]] double log_density(const GammaParams& p, double z);

/// L^L / (lambda^L Gamma(L)) z^(L-1) exp(-L z / lambda), evaluated in the log
/// domain. Throws std::domain_error for z <= 0.
[[nodiscard]] double density(const GammaParams& p, double z);

/// Log-likelihood of an i.i.d. sample.
[[nodiscard]] double log_likelihood(const GammaParams& p, const PixelSample& s);

/// n i.i.d. draws, each mean * Gamma(L, L) speckle.
[[nodiscard]] PixelSample sample(const GammaParams& p, std::size_t n, RandomStream& stream);

struct MleFit {
  GammaParams params;
  /// Constant sample: the looks estimate saturated at kMaxLooks.
  bool degenerate = false;
  /// Exact zeros were replaced by (smallest positive value * 1e-6) before taking logs.
  bool zeros_shifted = false;
};

/// Maximum-likelihood estimate of (L, lambda).
///
/// lambda is the arithmetic sample mean. L solves ln L - digamma(L) = ln(mean) - mean(ln z)
/// by bisection on [1, kMaxLooks] to relative tolerance 1e-10; right-hand sides
/// outside the attainable range clamp to the bracket ends.
///
/// Throws std::domain_error for fewer than two values, negative values, or an
/// all-zero sample.
[[nodiscard]] MleFit mle(const PixelSample& s);

/// Solves ln L - digamma(L) = rhs for L in [1, kMaxLooks] (clamped).
[[nodiscard]] double solve_looks(double rhs);

}  // namespace speckle
