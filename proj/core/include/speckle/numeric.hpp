#pragma once

#include <span>

namespace speckle {

/// Neumaier-compensated running sum. Results do not depend on the magnitude
/// ordering of the addends beyond a few ulps.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

[[nodiscard]] double compensated_sum(std::span<const double> xs) noexcept;
[[nodiscard]] double mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance, two-pass. Requires xs.size() >= 2.
[[nodiscard]] double sample_variance(std::span<const double> xs);

/// Digamma function for x > 0. Recurrence up to x >= 10 followed by the
/// asymptotic series; absolute error below 1e-13 for x >= 1.
[[nodiscard]] double digamma(double x);

/// ln(x) - digamma(x), evaluated without the cancellation that the direct
/// difference suffers for large x. Strictly decreasing on (0, inf) towards 0.
[[nodiscard]] double log_minus_digamma(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise.
[[nodiscard]] double regularized_gamma_q(double a, double x);

}  // namespace speckle
