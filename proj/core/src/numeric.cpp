#include "speckle/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace speckle {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty range");
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample variance needs at least two values");
  const double m = mean(xs);
  CompensatedSum sq;
  for (double x : xs) sq.add((x - m) * (x - m));
  return sq.value() / static_cast<double>(xs.size() - 1);
}

namespace {

// B_{2k} / (2k) for k = 1..7.
constexpr double kAsymptotic[] = {
    1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,   -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
};

// sum_k B_{2k} / (2k x^{2k}), valid for x >= 10.
double asymptotic_tail(double x) {
  const double inv2 = 1.0 / (x * x);
  double term = inv2;
  double s = 0.0;
  for (double c : kAsymptotic) {
    s += c * term;
    term *= inv2;
  }
  return s;
}

constexpr double kShift = 10.0;

}  // namespace

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("digamma: argument must be positive");
  double acc = 0.0;
  while (x < kShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  return acc + std::log(x) - 0.5 / x - asymptotic_tail(x);
}

double log_minus_digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_minus_digamma: argument must be positive");
  }
  // ln x - psi(x) = [ln(x+1) - psi(x+1)] + 1/x - log1p(1/x)
  double acc = 0.0;
  while (x < kShift) {
    acc += 1.0 / x - std::log1p(1.0 / x);
    x += 1.0;
  }
  return acc + 0.5 / x + asymptotic_tail(x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("regularized_gamma_q: a must be positive");
  if (x < 0.0 || std::isnan(x)) throw std::domain_error("regularized_gamma_q: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_iter = 1000;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);

  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < max_iter; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * eps) break;
    }
    const double p = sum * std::exp(log_prefix);
    return std::max(0.0, 1.0 - p);
  }

  constexpr double tiny = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return std::exp(log_prefix) * h;
}

}  // namespace speckle
