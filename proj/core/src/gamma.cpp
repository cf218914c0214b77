#include "speckle/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "speckle/numeric.hpp"

namespace speckle {

GammaParams::GammaParams(double looks, double mean) : looks_(looks), mean_(mean) {
  if (!std::isfinite(looks) || looks < 1.0 || looks > kMaxLooks) {
    throw std::invalid_argument("GammaParams: looks must lie in [1, 1e4]");
  }
  if (!std::isfinite(mean) || mean <= 0.0) {
    throw std::invalid_argument("GammaParams: mean must be positive and finite");
  }
}

double log_density(const GammaParams& p, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("density: z must be positive");
  const double L = p.looks();
  const double rate = L / p.mean();
  return L * std::log(rate) - std::lgamma(L) + (L - 1.0) * std::log(z) - rate * z;
}

double density(const GammaParams& p, double z) { return std::exp(log_density(p, z)); }

double log_likelihood(const GammaParams& p, const PixelSample& s) {
  CompensatedSum acc;
  for (double z : s.values()) acc.add(log_density(p, z));
  return acc.value();
}

PixelSample sample(const GammaParams& p, std::size_t n, RandomStream& stream) {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  std::vector<double> out(n);
  const double scale = p.mean() / p.looks();
  for (double& v : out) v = scale * stream.gamma(p.looks());
  return PixelSample(std::move(out));
}

double solve_looks(double rhs) {
  const double g_hi = log_minus_digamma(1.0);
  const double g_lo = log_minus_digamma(kMaxLooks);
  if (rhs >= g_hi) return 1.0;
  if (rhs <= g_lo) return kMaxLooks;
  double lo = 1.0;
  double hi = kMaxLooks;
  for (int i = 0; i < 200 && hi - lo > 1e-10 * lo; ++i) {
    const double mid = 0.5 * (lo + hi);
    // log_minus_digamma is decreasing: a value above rhs means the root lies to the right.
    if (log_minus_digamma(mid) > rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MleFit mle(const PixelSample& s) {
  const auto values = s.values();
  if (values.size() < 2) throw std::domain_error("mle: need at least two values");

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  if (*max_it <= 0.0) throw std::domain_error("mle: all values are zero");

  const double lambda = mean(values);

  if (*min_it == *max_it) {
    return MleFit{GammaParams(kMaxLooks, lambda), true, false};
  }

  bool shifted = false;
  double floor_value = 0.0;
  if (*min_it <= 0.0) {
    double smallest_positive = *max_it;
    for (double v : values) {
      if (v > 0.0) smallest_positive = std::min(smallest_positive, v);
    }
    floor_value = smallest_positive * 1e-6;
    shifted = true;
  }

  CompensatedSum log_sum;
  CompensatedSum shifted_sum;
  for (double v : values) {
    const double z = v > 0.0 ? v : floor_value;
    log_sum.add(std::log(z));
    shifted_sum.add(z);
  }
  const auto n = static_cast<double>(values.size());
  const double rhs = std::log(shifted_sum.value() / n) - log_sum.value() / n;
  return MleFit{GammaParams(solve_looks(rhs), lambda), false, shifted};
}

}  // namespace speckle
