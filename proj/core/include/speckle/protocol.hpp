#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speckle/divergence.hpp"
#include "speckle/image.hpp"
#include "speckle/metrics.hpp"
#include "speckle/phantom.hpp"
#include "speckle/random.hpp"

namespace speckle {

/// Simulated scene: features at strip_mean on a background_mean background,
/// observed through `looks`-look Gamma speckle.
struct Situation {
  int id = 0;
  double looks = 1.0;
  double strip_mean = 0.0;
  double background_mean = 0.0;
};

inline constexpr std::array<Situation, 4> kSituations = {{
    {1, 1.0, 200.0, 70.0},
    {2, 3.0, 195.0, 55.0},
    {3, 5.0, 150.0, 30.0},
    {4, 7.0, 170.0, 35.0},
}};

/// Throws std::invalid_argument for ids outside 1..4.
[[nodiscard]] const Situation& situation(int id);

/// Noiseless phantom: feature pixels at sit.strip_mean, the rest at sit.background_mean.
[[nodiscard]] Raster make_phantom(const PhantomGeometry& geom, const Situation& sit);

/// Multiplies every pixel by an independent unit-mean Gamma(L, L) speckle draw,
/// in row-major order. Throws std::invalid_argument if looks < 1.
[[nodiscard]] Raster corrupt(const Raster& phantom, double looks, RandomStream& stream);
[[nodiscard]] Raster corrupt(const Raster& phantom, const Situation& sit, RandomStream& stream);

/// Stream used for (situation, replicate); shared by every filter so all
/// filters see the same corrupted image.
[[nodiscard]] RandomStream replicate_stream(std::uint64_t master_seed, int situation_id, int replicate);

enum class FilterFamily { Input, Lee, Stochastic };

struct FilterEntry {
  FilterFamily family = FilterFamily::Stochastic;
  DistanceKind distance = DistanceKind::Hellinger;
  int window = 5;

  /// CSV name: "input", "lee", "hellinger", "kl" or "renyi".
  [[nodiscard]] std::string name() const;
};

struct RunPlan {
  std::vector<int> situations = {1, 2, 3, 4};
  int replicates = 100;
  /// Unfiltered input, Lee 5/7 and Hellinger 5/7.
  std::vector<FilterEntry> filters = {
      {FilterFamily::Input, DistanceKind::Hellinger, 0},
      {FilterFamily::Lee, DistanceKind::Hellinger, 5},
      {FilterFamily::Lee, DistanceKind::Hellinger, 7},
      {FilterFamily::Stochastic, DistanceKind::Hellinger, 5},
      {FilterFamily::Stochastic, DistanceKind::Hellinger, 7},
  };
  /// Family-wise significance levels alpha (0.01 is the "99%" level).
  std::vector<double> levels = {0.01};
  std::uint64_t master_seed = 1;
  PhantomGeometry geometry = default_geometry(128);
  /// Source of dof, Renyi order and shared-looks policy for stochastic filters.
  TestConfig test{};

  /// 64x64 phantom, 20 replicates.
  [[nodiscard]] static RunPlan fast();

  void validate() const;
};

struct ProtocolRow {
  std::string filter;
  int window = 0;
  double level = 0.0;
  int situation = 0;
  int replicate = 0;
  MetricReport metrics;
};

/// Runs every (situation, replicate) task, possibly in parallel, and returns
/// rows ordered by situation, replicate, plan filter order and level. Results
/// do not depend on `threads`. Filters that cannot run leave NA metrics.
[[nodiscard]] std::vector<ProtocolRow> run_protocol(const RunPlan& plan, int threads = 1);

/// "filter,window,level,situation,replicate,enl,line_contrast_error,edge_gradient,
/// edge_variance,q_mean,q_std,beta_rho,mae,mse,nmse,dcon"
[[nodiscard]] std::string protocol_csv_header();
[[nodiscard]] std::string protocol_csv_row(const ProtocolRow& row);

/// Comment lines are written first, each prefixed with "# ".
void write_protocol_csv(const std::vector<ProtocolRow>& rows, std::ostream& out,
                        const std::vector<std::string>& comments = {});

}  // namespace speckle
