#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "speckle/metrics.hpp"
#include "speckle/numeric.hpp"
#include "speckle/protocol.hpp"

namespace speckle {
namespace {

RunPlan tiny_plan() {
  RunPlan plan = RunPlan::fast();
  plan.replicates = 1;
  plan.situations = {2};
  plan.filters = {{FilterFamily::Lee, DistanceKind::Hellinger, 5}, {FilterFamily::Stochastic, DistanceKind::Hellinger, 5}};
  return plan;
}

TEST(Situations, TableValues) {
  EXPECT_EQ(situation(3).looks, 5.0);
  EXPECT_EQ(situation(4).strip_mean, 170.0);
  EXPECT_EQ(situation(2).background_mean, 55.0);
  EXPECT_THROW((void)situation(5), std::invalid_argument);
}

TEST(MakePhantom, TwoLevels) {
  const PhantomGeometry g = default_geometry(64);
  const Raster p = make_phantom(g, situation(1));
  const auto bright = std::count(p.values().begin(), p.values().end(), 200.0);
  EXPECT_EQ(static_cast<std::size_t>(bright), g.feature_count());
  EXPECT_EQ(static_cast<std::size_t>(std::count(p.values().begin(), p.values().end(), 70.0)), p.size() - bright);
  EXPECT_EQ(make_phantom(g, situation(1)), p);
}

TEST(Corrupt, UnitMeanSpeckleWithLooksVariance) {
  for (const Situation& sit : kSituations) {
    RandomStream stream(sit.id);
    const Raster noisy = corrupt(Raster(200, 200, 50.0), sit, stream);
    const double m = mean(noisy.values());
    EXPECT_NEAR(m / 50.0, 1.0, 0.02);
    EXPECT_NEAR(sample_variance(noisy.values()) / (m * m) * sit.looks, 1.0, 0.05);
  }
  RandomStream stream(9);
  const Raster nearly_clean = corrupt(Raster(100, 100, 10.0), 1e4, stream);
  const double m = mean(nearly_clean.values());
  EXPECT_NEAR(m, 10.0, 0.01);
  EXPECT_NEAR(sample_variance(nearly_clean.values()) / (m * m) * 1e4, 1.0, 0.05);
  for (double v : nearly_clean.values()) ASSERT_LE(std::abs(v / 10.0 - 1.0), 0.05);
  EXPECT_THROW((void)corrupt(Raster(2, 2, 1.0), 0.5, stream), std::invalid_argument);
}

TEST(ReplicateStream, IndependentKeys) {
  RandomStream a = replicate_stream(1, 2, 0);
  RandomStream b = replicate_stream(1, 2, 1);
  RandomStream c = replicate_stream(1, 3, 0);
  RandomStream a2 = replicate_stream(1, 2, 0);
  const double va = a.uniform();
  EXPECT_NE(va, b.uniform());
  EXPECT_NE(va, c.uniform());
  EXPECT_EQ(va, a2.uniform());
}

TEST(RunProtocol, RowCountContract) {
  RunPlan plan = tiny_plan();
  EXPECT_EQ(run_protocol(plan).size(), 2u);
  plan.levels = {0.01, 0.2};
  const auto rows = run_protocol(plan);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].filter, "lee");
  EXPECT_EQ(rows[0].level, 0.01);
  EXPECT_EQ(rows[1].level, 0.2);
  EXPECT_EQ(rows[0].metrics.enl, rows[1].metrics.enl);
  EXPECT_EQ(rows[2].filter, "hellinger");
  EXPECT_NE(rows[2].metrics.enl, rows[3].metrics.enl);
}

TEST(RunProtocol, DeterministicAcrossThreadCounts) {
  RunPlan plan = tiny_plan();
  plan.replicates = 3;
  plan.situations = {1, 4};
  plan.filters.push_back({FilterFamily::Input, DistanceKind::Hellinger, 0});
  auto csv = [&](int threads) {
    std::ostringstream out;
    write_protocol_csv(run_protocol(plan, threads), out, {"probe"});
    return out.str();
  };
  const std::string one = csv(1);
  EXPECT_EQ(one, csv(2));
  EXPECT_EQ(one, csv(5));
  EXPECT_EQ(one.rfind("# probe\nfilter,window,level,situation,replicate,enl,", 0), 0u);
}

TEST(RunProtocol, FiltersSeeTheSameNoisyImage) {
  RunPlan plan = tiny_plan();
  plan.replicates = 2;
  plan.filters = {{FilterFamily::Input, DistanceKind::Hellinger, 0}, {FilterFamily::Input, DistanceKind::Hellinger, 0}};
  const auto rows = run_protocol(plan);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].metrics.csv_row(), rows[1].metrics.csv_row());
  EXPECT_NE(rows[0].metrics.csv_row(), rows[2].metrics.csv_row());
}

TEST(RunProtocol, ReplicatesAreIndependent) {
  RunPlan plan = tiny_plan();
  plan.replicates = 3;
  const auto three = run_protocol(plan);
  plan.replicates = 2;
  const auto two = run_protocol(plan);
  ASSERT_EQ(three.size(), 6u);
  ASSERT_EQ(two.size(), 4u);
  for (std::size_t i = 0; i < two.size(); ++i) EXPECT_EQ(protocol_csv_row(two[i]), protocol_csv_row(three[i]));
}

TEST(RunPlan, Validation) {
  RunPlan plan = tiny_plan();
  plan.levels = {1.5};
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan = tiny_plan();
  plan.filters = {{FilterFamily::Stochastic, DistanceKind::Hellinger, 9}};
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan = tiny_plan();
  plan.replicates = 0;
  EXPECT_THROW(plan.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace speckle
