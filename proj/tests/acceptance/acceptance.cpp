// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "speckle/divergence.hpp"
#include "speckle/gamma.hpp"
#include "speckle/metrics.hpp"
#include "speckle/protocol.hpp"

using namespace speckle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("%s criterion %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void null_calibration() {
  const auto t0 = Clock::now();
  const GammaParams truth(3.0, 195.0);
  const int trials = 10000;
  const std::array<double, 3> alphas = {0.2, 0.1, 0.01};
  std::array<int, 3> rejections{};
  for (int t = 0; t < trials; ++t) {
    RandomStream stream(1001, {static_cast<std::uint64_t>(t)});
    const PixelSample a = sample(truth, 49, stream);
    const PixelSample b = sample(truth, 49, stream);
    TestConfig cfg;
    const double s = run_test(a, b, cfg).statistic;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      cfg.overall_alpha = alphas[k];
      rejections[k] += decide(s, cfg).rejected ? 1 : 0;
    }
  }
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const double eta = sidak_level(alphas[k], 8);
    const double rate = static_cast<double>(rejections[k]) / trials;
    const double sigma = std::sqrt(eta * (1.0 - eta) / trials);
    const bool within = std::abs(rate - eta) <= 3.0 * sigma;
    ok = ok && within;
    detail << "eta=" << fmt(eta, 4) << " rate=" << fmt(rate, 4) << " z=" << fmt((rate - eta) / sigma, 3) << "; ";
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed <= 60.0;
  detail << "runtime " << fmt(elapsed, 3) << " s";
  report("1 (null calibration)", ok, detail.str());
}

void mle_consistency() {
  bool ok = true;
  std::ostringstream detail;
  for (const Situation& sit : kSituations) {
    RandomStream stream(2002, {static_cast<std::uint64_t>(sit.id)});
    const MleFit fit = mle(sample(GammaParams(sit.looks, sit.strip_mean), 10000, stream));
    const double em = std::abs(fit.params.mean() / sit.strip_mean - 1.0);
    const double el = std::abs(fit.params.looks() / sit.looks - 1.0);
    ok = ok && em <= 0.02 && el <= 0.10;
    detail << "#" << sit.id << " mean err " << fmt(em, 3) << " looks err " << fmt(el, 3) << "; ";
  }
  report("2 (MLE consistency)", ok, detail.str());
}

void statistic_identities() {
  const GammaParams p(2.5, 41.0);
  const bool zeros = hellinger_stat(p, p, 9, 7, 2.5) == 0.0 && kl_stat(p, p, 9, 7, 2.5) == 0.0 &&
                     renyi_stat(p, p, 9, 7, 2.5, 0.5) == 0.0;
  const double h = hellinger_stat(GammaParams(1, 1), GammaParams(1, 3), 9, 9, 1.0);
  const double kl = kl_stat(GammaParams(1, 2), GammaParams(1, 1), 9, 9, 1.0);
  const bool ok = zeros && std::abs(h - 4.8231) <= 1e-3 && kl == 2.25;
  report("3 (statistic identities)", ok,
         std::string("zeros ") + (zeros ? "exact" : "not exact") + ", hellinger " + fmt(h, 10) + ", kl " + fmt(kl, 17));
}

void sidak_and_chi2() {
  const double eta = sidak_level(0.01, 8);
  report("4a (Sidak level)", std::abs(eta - 1.25627e-3) <= 1e-8,
         "eta(0.01, 8) = " + fmt(eta, 15) + " vs stated 1.25627e-3 (tolerance 1e-8)");
  const double lib = chi2_survival(3.8415, 1);
  const double quad = oracle::chi2_1_survival(3.8415);
  report("4b (chi-square survival)", std::abs(lib - 0.05) <= 1e-4 && std::abs(lib - quad) <= 1e-4,
         "chi2_survival(3.8415, 1) = " + fmt(lib, 12) + ", quadrature " + fmt(quad, 12));
}

void enl_recovery() {
  bool ok = true;
  double worst = 0.0;
  for (const Situation& sit : kSituations) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomStream stream(5005, {static_cast<std::uint64_t>(sit.id), seed});
      const Raster img = corrupt(Raster(64, 64, sit.strip_mean), sit, stream);
      const double e = enl(PixelSample({img.values().begin(), img.values().end()}));
      const double rel = std::abs(e / sit.looks - 1.0);
      worst = std::max(worst, rel);
      ok = ok && rel <= 0.15;
    }
  }
  report("5 (ENL recovery)", ok, "worst relative error " + fmt(worst, 3) + " over 4 x 20 images");
}

std::string protocol_csv(const std::vector<ProtocolRow>& rows) {
  std::ostringstream out;
  write_protocol_csv(rows, out);
  return out.str();
}

std::vector<double> collect(const std::vector<ProtocolRow>& rows, int sit, const std::string& filter, int window,
                            std::optional<double> MetricReport::*field, std::size_t* missing = nullptr) {
  std::vector<double> v;
  for (const ProtocolRow& r : rows) {
    if (r.situation != sit || r.filter != filter || r.window != window) continue;
    const auto& value = r.metrics.*field;
    if (value) {
      v.push_back(*value);
    } else if (missing != nullptr) {
      ++*missing;
    }
  }
  return v;
}

void protocol_criteria() {
  const RunPlan plan = RunPlan::fast();
  const auto t0 = Clock::now();
  const std::vector<ProtocolRow> rows = run_protocol(plan, 1);
  const double elapsed = seconds_since(t0);

  {
    const auto h = collect(rows, 2, "hellinger", 5, &MetricReport::enl);
    const auto lee = collect(rows, 2, "lee", 5, &MetricReport::enl);
    const auto in = collect(rows, 2, "input", 0, &MetricReport::enl);
    bool ok = !h.empty() && !lee.empty() && !in.empty() && elapsed <= 600.0;
    double mh = 0, ml = 0, mi = 0;
    if (ok) {
      mh = median(h);
      ml = median(lee);
      mi = median(in);
      ok = mh > ml && ml > mi;
    }
    report("6 (ENL ordering, situation 2)", ok,
           "median ENL hellinger5 " + fmt(mh, 4) + ", lee5 " + fmt(ml, 4) + ", input " + fmt(mi, 4) + "; runtime " +
               fmt(elapsed, 4) + " s");
  }

  {
    int wins = 0;
    std::ostringstream detail;
    for (int sit = 1; sit <= 4; ++sit) {
      const auto h = collect(rows, sit, "hellinger", 5, &MetricReport::q_mean);
      const auto lee = collect(rows, sit, "lee", 5, &MetricReport::q_mean);
      if (h.empty() || lee.empty()) {
        detail << "#" << sit << " missing; ";
        continue;
      }
      const double mh = median(h);
      const double ml = median(lee);
      if (mh > ml) ++wins;
      detail << "#" << sit << " hellinger5 " << fmt(mh, 4) << " vs lee5 " << fmt(ml, 4) << "; ";
    }
    detail << wins << "/4 situations favour hellinger5";
    report("7 (Q-index ordering)", wins >= 3, detail.str());
  }

  {
    std::size_t present = 0;
    std::size_t missing = 0;
    std::ostringstream detail;
    for (int sit = 1; sit <= 4; ++sit) {
      const auto h = collect(rows, sit, "hellinger", 5, &MetricReport::edge_variance, &missing);
      const auto lee = collect(rows, sit, "lee", 5, &MetricReport::edge_variance, &missing);
      present += h.size() + lee.size();
      detail << "#" << sit << " median edge variance lee5 " << (lee.empty() ? std::string("NA") : fmt(median(lee), 4))
             << " hellinger5 " << (h.empty() ? std::string("NA") : fmt(median(h), 4)) << "; ";
    }
    const double frac = static_cast<double>(present) / static_cast<double>(present + missing);
    detail << "non-NA fraction " << fmt(frac, 4);
    report("8 (edge-variance diagnostic)", frac >= 0.95, detail.str());
  }

  {
    const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
    const std::string first = protocol_csv(rows);
    const std::string second = protocol_csv(run_protocol(plan, static_cast<int>(hw)));
    report("11 (determinism)", first == second,
           "fast run with 1 and " + std::to_string(hw) + " threads, " + std::to_string(first.size()) + " CSV bytes " +
               (first == second ? "identical" : "differ"));
  }
}

void metric_identities() {
  bool ok = true;
  double worst_q = 0.0;
  double worst_b = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    RandomStream stream(9009, {k});
    const int w = 8 + static_cast<int>(stream.uniform() * 40);
    const int h = 8 + static_cast<int>(stream.uniform() * 40);
    std::vector<double> xv(static_cast<std::size_t>(w * h));
    std::vector<double> yv(xv.size());
    for (double& v : xv) v = 255.0 * stream.uniform();
    for (double& v : yv) v = 255.0 * stream.uniform();
    const Raster x(w, h, xv);
    const Raster y(w, h, yv);
    const ErrorMetrics self = error_metrics(x, x);
    ok = ok && self.mae == 0.0 && self.mse == 0.0 && self.nmse == 0.0 && self.dcon == 0.0;
    const QIndex q = q_index(x, x);
    worst_q = std::max({worst_q, std::abs(q.mean - 1.0), std::abs(q.stddev)});
    worst_b = std::max(worst_b, std::abs(beta_rho(x, x) - 1.0));
    const ErrorMetrics e = error_metrics(x, y);
    ok = ok && e.mse >= e.mae * e.mae;
  }
  ok = ok && worst_q <= 1e-12 && worst_b <= 1e-12;
  report("9 (metric identities)", ok,
         "50 rasters; max |Q-1|,|Qstd| " + fmt(worst_q, 3) + ", max |beta_rho-1| " + fmt(worst_b, 3));
}

void decision_agreement() {
  const std::array<DistanceKind, 3> kinds = {DistanceKind::Hellinger, DistanceKind::KullbackLeibler,
                                             DistanceKind::Renyi};
  const std::array<double, 3> alphas = {0.2, 0.1, 0.01};
  const std::array<double, 4> ratios = {1.0, 1.5, 3.0, 10.0};
  const int trials = 2000;
  std::array<std::array<long, 3>, 3> agree{};
  long total = 0;
  long unanimous = 0;
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    for (int t = 0; t < trials; ++t) {
      RandomStream stream(10010, {ri, static_cast<std::uint64_t>(t)});
      const PixelSample a = sample(GammaParams(3.0, 195.0), 49, stream);
      const PixelSample b = sample(GammaParams(3.0, 195.0 * ratios[ri]), 49, stream);
      std::array<double, 3> stats{};
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        TestConfig cfg;
        cfg.kind = kinds[k];
        stats[k] = run_test(a, b, cfg).statistic;
      }
      for (double alpha : alphas) {
        std::array<bool, 3> d{};
        for (std::size_t k = 0; k < kinds.size(); ++k) {
          TestConfig cfg;
          cfg.kind = kinds[k];
          cfg.overall_alpha = alpha;
          d[k] = decide(stats[k], cfg).rejected;
        }
        ++total;
        if (d[0] == d[1] && d[1] == d[2]) ++unanimous;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) agree[i][j] += d[i] == d[j] ? 1 : 0;
      }
    }
  }
  const double frac = static_cast<double>(unanimous) / static_cast<double>(total);
  std::ostringstream detail;
  detail << "all three agree on " << fmt(100.0 * frac, 5) << "% of " << total << " decisions; pairwise [H,KL,R] ";
  for (std::size_t i = 0; i < 3; ++i) {
    detail << '[';
    for (std::size_t j = 0; j < 3; ++j) {
      detail << fmt(100.0 * static_cast<double>(agree[i][j]) / static_cast<double>(total), 5) << (j < 2 ? " " : "");
    }
    detail << ']';
  }
  report("10 (decision agreement)", frac >= 0.95, detail.str());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> steps = {null_calibration,   mle_consistency, statistic_identities,
                                                    sidak_and_chi2,     enl_recovery,    metric_identities,
                                                    decision_agreement, protocol_criteria};
  for (const auto& step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      report("(exception)", false, e.what());
    }
  }
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
