#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "speckle/gamma.hpp"
#include "speckle/numeric.hpp"

namespace speckle {
namespace {

TEST(GammaParams, Invariants) {
  EXPECT_NO_THROW(GammaParams(1.0, 1e-3));
  EXPECT_NO_THROW(GammaParams(kMaxLooks, 5.0));
  EXPECT_THROW(GammaParams(0.99, 1.0), std::invalid_argument);
  EXPECT_THROW(GammaParams(kMaxLooks * 1.01, 1.0), std::invalid_argument);
  EXPECT_THROW(GammaParams(2.0, 0.0), std::invalid_argument);
  EXPECT_THROW(GammaParams(2.0, INFINITY), std::invalid_argument);
}

TEST(Density, ExponentialCase) {
  EXPECT_NEAR(density(GammaParams(1.0, 2.0), 2.0), 0.183939720585721160798, 1e-15);
  EXPECT_THROW((void)density(GammaParams(1.0, 2.0), 0.0), std::domain_error);
  EXPECT_THROW((void)density(GammaParams(1.0, 2.0), -1.0), std::domain_error);
}

TEST(Density, MatchesDirectFormula) {
  for (double L : {1.0, 2.5, 7.0}) {
    for (double z : {0.5, 10.0, 150.0, 400.0}) {
      EXPECT_NEAR(density(GammaParams(L, 150.0), z), oracle::gamma_density(L, 150.0, z),
                  1e-12 * oracle::gamma_density(L, 150.0, z) + 1e-300);
    }
  }
}

TEST(Density, IntegratesToOneOnSituationGrid) {
  for (double L : {1.0, 3.0, 5.0, 7.0}) {
    for (double lambda : {150.0, 170.0, 195.0, 200.0}) {
      const GammaParams p(L, lambda);
      auto f = [&](double z) { return z > 0.0 ? density(p, z) : (L == 1.0 ? 1.0 / lambda : 0.0); };
      double total = 0.0;
      const double cuts[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 60.0};
      for (std::size_t k = 0; k + 1 < std::size(cuts); ++k) {
        total += oracle::integrate(f, cuts[k] * lambda, cuts[k + 1] * lambda, 1e-13);
      }
      EXPECT_NEAR(total, 1.0, 1e-8) << L << ' ' << lambda;
    }
  }
}

TEST(Density, ModeOfSituationTwo) {
  const GammaParams p(3.0, 195.0);
  const double mode = 195.0 * 2.0 / 3.0;
  EXPECT_DOUBLE_EQ(mode, 130.0);
  const double h = 1e-3;
  EXPECT_GT(density(p, mode), density(p, mode - h));
  EXPECT_GT(density(p, mode), density(p, mode + h));
  EXPECT_NEAR((std::log(density(p, mode + h)) - std::log(density(p, mode - h))) / (2 * h), 0.0, 1e-9);
}

TEST(Sample, MeanWithinCltBound) {
  RandomStream stream(2024);
  const GammaParams p(1.0, 200.0);
  const std::size_t n = 100000;
  const PixelSample s = sample(p, n, stream);
  EXPECT_NEAR(mean(s.values()), 200.0, 3.0 * 200.0 / std::sqrt(1.0 * n));
}

TEST(Sample, CoefficientOfVariation) {
  RandomStream stream(77);
  const PixelSample s = sample(GammaParams(5.0, 150.0), 100000, stream);
  const double m = mean(s.values());
  const double cv2 = sample_variance(s.values()) / (m * m);
  EXPECT_NEAR(cv2, 0.2, 0.2 * 0.05);
}

TEST(Sample, DeterministicPerSeedAndStream) {
  RandomStream a(9, {1, 2});
  RandomStream b(9, {1, 2});
  RandomStream c(9, {1, 3});
  const GammaParams p(3.0, 195.0);
  const PixelSample sa = sample(p, 1000, a);
  const PixelSample sb = sample(p, 1000, b);
  const PixelSample sc = sample(p, 1000, c);
  EXPECT_TRUE(std::equal(sa.values().begin(), sa.values().end(), sb.values().begin()));
  EXPECT_FALSE(std::equal(sa.values().begin(), sa.values().end(), sc.values().begin()));
}

TEST(Mle, RecoversSituationTwo) {
  RandomStream stream(42);
  const MleFit fit = mle(sample(GammaParams(3.0, 195.0), 10000, stream));
  EXPECT_NEAR(fit.params.mean() / 195.0, 1.0, 0.02);
  EXPECT_NEAR(fit.params.looks() / 3.0, 1.0, 0.10);
  EXPECT_FALSE(fit.degenerate);
}

TEST(Mle, ConstantSampleSaturates) {
  const MleFit fit = mle(PixelSample(std::vector<double>{5, 5, 5, 5}));
  EXPECT_EQ(fit.params.mean(), 5.0);
  EXPECT_EQ(fit.params.looks(), kMaxLooks);
  EXPECT_TRUE(fit.degenerate);
}

TEST(Mle, TwoPointSampleSolvesTheLikelihoodEquation) {
  const double e2 = std::exp(2.0);
  const MleFit fit = mle(PixelSample(std::vector<double>{1.0, e2}));
  const double rhs = std::log((1.0 + e2) / 2.0) - 1.0;
  EXPECT_NEAR(rhs, 0.43378083048302718703, 1e-15);
  const double L = fit.params.looks();
  EXPECT_NEAR(std::log(L) - digamma(L), rhs, 1e-8);
  EXPECT_NEAR(L, 1.29393337380233433754, 1e-8);
  EXPECT_DOUBLE_EQ(fit.params.mean(), (1.0 + e2) / 2.0);
}

TEST(Mle, MeanIsTheSampleMean) {
  RandomStream stream(1);
  for (int k = 0; k < 20; ++k) {
    const PixelSample s = sample(GammaParams(2.0, 50.0), 9, stream);
    EXPECT_EQ(mle(s).params.mean(), mean(s.values()));
  }
}

TEST(Mle, DispersedSampleClampsToOneLook) {
  // ln(mean) - mean(ln z) far above ln 1 - digamma(1).
  const MleFit fit = mle(PixelSample(std::vector<double>{1e-6, 1.0, 1e3}));
  EXPECT_EQ(fit.params.looks(), 1.0);
}

TEST(Mle, ZerosAreShifted) {
  const MleFit fit = mle(PixelSample(std::vector<double>{0.0, 2.0, 4.0}));
  EXPECT_TRUE(fit.zeros_shifted);
  EXPECT_NEAR(fit.params.mean(), 2.0, 1e-5);
  EXPECT_THROW((void)mle(PixelSample(std::vector<double>{0.0, 0.0})), std::domain_error);
}

TEST(Mle, Preconditions) { EXPECT_THROW((void)mle(PixelSample(std::vector<double>{3.0})), std::domain_error); }

TEST(SolveLooks, InvertsTheObjective) {
  for (double L : {1.0001, 1.5, 3.0, 7.0, 49.0, 2500.0, 9999.0}) {
    EXPECT_NEAR(solve_looks(log_minus_digamma(L)) / L, 1.0, 1e-9) << L;
  }
  EXPECT_EQ(solve_looks(0.0), kMaxLooks);
  EXPECT_EQ(solve_looks(1.0), 1.0);
}

TEST(Mle, ConsistentOnAllSituations) {
  const double rows[4][2] = {{1, 200}, {3, 195}, {5, 150}, {7, 170}};
  for (int i = 0; i < 4; ++i) {
    RandomStream stream(100, {static_cast<std::uint64_t>(i)});
    const MleFit fit = mle(sample(GammaParams(rows[i][0], rows[i][1]), 10000, stream));
    EXPECT_NEAR(fit.params.looks() / rows[i][0], 1.0, 0.10);
    EXPECT_NEAR(fit.params.mean() / rows[i][1], 1.0, 0.02);
  }
}

TEST(LogLikelihood, MaximizedAtMle) {
  RandomStream stream(8);
  const PixelSample s = sample(GammaParams(4.0, 80.0), 500, stream);
  const MleFit fit = mle(s);
  const double best = log_likelihood(fit.params, s);
  for (double dl : {-0.2, 0.2}) {
    EXPECT_LT(log_likelihood(GammaParams(fit.params.looks() + dl, fit.params.mean()), s), best);
  }
  for (double dm : {-1.0, 1.0}) {
    EXPECT_LT(log_likelihood(GammaParams(fit.params.looks(), fit.params.mean() + dm), s), best);
  }
}

}  // namespace
}  // namespace speckle
