#include "speckle/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "speckle/numeric.hpp"

namespace speckle {
namespace {

constexpr double kNegativeSlack = 1e-12;

void check_inputs(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n, double L) {
  if (m == 0 || n == 0) throw std::invalid_argument("sample sizes must be >= 1");
  if (!std::isfinite(L) || L < 1.0) throw std::domain_error("shared looks must be finite and >= 1");
  if (!std::isfinite(p1.mean()) || !std::isfinite(pi.mean())) {
    throw std::domain_error("non-finite mean");
  }
}

double harmonic_factor(std::size_t m, std::size_t n) {
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  return md * nd / (md + nd);
}

// Ratio of the smaller to the larger mean, in (0, 1]. Working with the ordered
// ratio makes every statistic exactly symmetric in its two arguments.
double ordered_ratio(const GammaParams& p1, const GammaParams& pi) {
  const double a = std::min(p1.mean(), pi.mean());
  const double b = std::max(p1.mean(), pi.mean());
  return a / b;
}

double clamp_rounding(double s) {
  if (std::isnan(s)) throw std::domain_error("statistic evaluated to NaN");
  if (s >= 0.0) return s;
  if (s >= -kNegativeSlack) return 0.0;
  throw std::logic_error("test statistic is negative beyond rounding slack");
}

}  // namespace

std::optional<DistanceKind> parse_distance(std::string_view name) {
  if (name == "hellinger") return DistanceKind::Hellinger;
  if (name == "kl" || name == "kullback-leibler") return DistanceKind::KullbackLeibler;
  if (name == "renyi") return DistanceKind::Renyi;
  return std::nullopt;
}

std::string_view distance_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Hellinger:
      return "hellinger";
    case DistanceKind::KullbackLeibler:
      return "kl";
    case DistanceKind::Renyi:
      return "renyi";
  }
  return "unknown";
}

void TestConfig::validate() const {
  if (!(overall_alpha > 0.0 && overall_alpha < 1.0)) {
    throw std::invalid_argument("overall alpha must lie in (0, 1)");
  }
  if (num_tests < 1) throw std::invalid_argument("num_tests must be >= 1");
  if (dof != 1 && dof != 2) throw std::invalid_argument("dof must be 1 or 2");
  if (kind == DistanceKind::Renyi && !(renyi_order > 0.0 && renyi_order < 1.0)) {
    throw std::invalid_argument("Renyi order must lie in (0, 1)");
  }
}

double sidak_level(double overall_alpha, int num_tests) {
  if (!(overall_alpha > 0.0 && overall_alpha < 1.0)) {
    throw std::invalid_argument("sidak_level: alpha must lie in (0, 1)");
  }
  if (num_tests < 1) throw std::invalid_argument("sidak_level: num_tests must be >= 1");
  if (num_tests == 1) return overall_alpha;
  // 1 - exp(log1p(-alpha) / t), without cancellation for small alpha.
  return -std::expm1(std::log1p(-overall_alpha) / num_tests);
}

double hellinger_stat(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n,
                      double shared_looks) {
  check_inputs(p1, pi, m, n, shared_looks);
  if (p1.mean() == pi.mean()) return 0.0;
  const double r = ordered_ratio(p1, pi);
  // 2^L (l1 li)^(L/2) / (l1 + li)^L = (2 sqrt(r) / (1 + r))^L
  const double log_affinity = shared_looks * (std::log(2.0) + 0.5 * std::log(r) - std::log1p(r));
  return clamp_rounding(8.0 * harmonic_factor(m, n) * -std::expm1(log_affinity));
}

double kl_stat(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n, double shared_looks) {
  check_inputs(p1, pi, m, n, shared_looks);
  if (p1.mean() == pi.mean()) return 0.0;
  const double r = ordered_ratio(p1, pi);
  // (l1^2 + li^2) / (2 l1 li) - 1 = (1 - r)^2 / (2 r)
  const double d = (1.0 - r) * (1.0 - r) / (2.0 * r);
  return clamp_rounding(2.0 * harmonic_factor(m, n) * shared_looks * d);
}

double renyi_stat(const GammaParams& p1, const GammaParams& pi, std::size_t m, std::size_t n, double shared_looks,
                  double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("Renyi order must lie in (0, 1)");
  check_inputs(p1, pi, m, n, shared_looks);
  if (p1.mean() == pi.mean()) return 0.0;
  const double r = ordered_ratio(p1, pi);
  // l1 li / ((b li + (1-b) l1)(b l1 + (1-b) li)), divided through by max(l1, li)^2.
  // The product in the denominator is symmetric in (l1, li).
  const double log_arg = std::log(r) - std::log(beta + (1.0 - beta) * r) - std::log(beta * r + (1.0 - beta));
  const double s = 2.0 * harmonic_factor(m, n) * shared_looks / (2.0 * beta * (beta - 1.0)) * log_arg;
  return clamp_rounding(s);
}

double statistic(const TestConfig& cfg, const GammaParams& p1, const GammaParams& pi, std::size_t m,
                 std::size_t n, double shared_looks) {
  switch (cfg.kind) {
    case DistanceKind::Hellinger:
      return hellinger_stat(p1, pi, m, n, shared_looks);
    case DistanceKind::KullbackLeibler:
      return kl_stat(p1, pi, m, n, shared_looks);
    case DistanceKind::Renyi:
      return renyi_stat(p1, pi, m, n, shared_looks, cfg.renyi_order);
  }
  throw std::invalid_argument("unknown distance kind");
}

double chi2_survival(double s, int dof) {
  if (dof < 1) throw std::invalid_argument("chi2_survival: dof must be >= 1");
  if (std::isnan(s) || s < 0.0) throw std::invalid_argument("chi2_survival: statistic must be >= 0");
  return regularized_gamma_q(0.5 * dof, 0.5 * s);
}

TestOutcome decide(double stat, const TestConfig& cfg) {
  const double p = chi2_survival(stat, cfg.dof);
  return TestOutcome{stat, p, p <= sidak_level(cfg.overall_alpha, cfg.num_tests)};
}

TestOutcome run_test(const PixelSample& sample1, const PixelSample& sample_i, const TestConfig& cfg) {
  cfg.validate();
  const MleFit fit1 = mle(sample1);
  const MleFit fit_i = mle(sample_i);

  double shared = fit1.params.looks();
  if (cfg.shared_looks == SharedLooks::Pooled) {
    std::vector<double> pooled(sample1.values().begin(), sample1.values().end());
    pooled.insert(pooled.end(), sample_i.values().begin(), sample_i.values().end());
    shared = mle(PixelSample(std::move(pooled))).params.looks();
  }
  const double s = statistic(cfg, fit1.params, fit_i.params, sample1.count(), sample_i.count(), shared);
  return decide(s, cfg);
}

}  // namespace speckle
