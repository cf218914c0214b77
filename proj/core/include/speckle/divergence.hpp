#pragma once

#include <cstddef>
#include <string_view>
#include <optional>

#include "speckle/gamma.hpp"
#include "speckle/image.hpp"

namespace speckle {

enum class DistanceKind { Hellinger, KullbackLeibler, Renyi };

/// Which looks estimate is plugged into the closed-form statistics.
enum class SharedLooks {
  Central,  ///< L estimated from the first (reference) sample.
  Pooled,   ///< L estimated from the concatenation of both samples.
};

[[nodiscard]] std::optional<DistanceKind> parse_distance(std::string_view name);
[[nodiscard]] std::string_view distance_name(DistanceKind kind);

struct TestConfig {
  DistanceKind kind = DistanceKind::Hellinger;
  double renyi_order = 0.5;
  /// Family-wise significance over all num_tests comparisons.
  double overall_alpha = 0.2;
  int num_tests = 8;
  /// Degrees of freedom of the limiting chi-square law (1 or 2).
  int dof = 1;
  SharedLooks shared_looks = SharedLooks::Central;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct TestOutcome {
  double statistic = 0.0;
  double p_value = 1.0;
  bool rejected = false;
};

/// Per-test level eta = 1 - (1 - alpha)^(1/t) keeping the family-wise level at alpha.
[[nodiscard]] double sidak_level(double overall_alpha, int num_tests);

// Closed-form scaled statistics between Gamma(L, L/lambda1) and Gamma(L, L/lambda_i)
// fitted on samples of sizes m and n. All are symmetric in the two means, zero
// iff the means are equal, and clamped at zero against rounding.
[[nodiscard]] double hellinger_stat(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n,
                                    double shared_looks);
[[nodiscard]] double kl_stat(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n,
                             double shared_looks);
/// beta must lie in (0, 1).
[[nodiscard]] double renyi_stat(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n,
                                double shared_looks, double beta);

/// Dispatches on cfg.kind.
[[nodiscard]] double statistic(const TestConfig& cfg, const GammaParams& p1, const GammaParams& pi,
                               std::size_t m, std::size_t n, double shared_looks);

/// Pr(chi2_dof > s).
[[nodiscard]] double chi2_survival(double s, int dof);

/// Decision from an already computed statistic: p = chi2_survival(s, dof), rejected iff p <= eta.
[[nodiscard]] TestOutcome decide(double statistic, const TestConfig& cfg);

/// Fits both samples by maximum likelihood and tests equality of their laws.
[[nodiscard]] TestOutcome run_test(const PixelSample& sample1, const PixelSample& sample_i, const TestConfig& cfg);

}  // namespace speckle
