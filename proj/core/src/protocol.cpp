#include "speckle/protocol.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "parallel.hpp"
#include "speckle/lee_filter.hpp"
#include "speckle/stochastic_filter.hpp"

namespace speckle {

const Situation& situation(int id) {
  if (id < 1 || id > static_cast<int>(kSituations.size())) {
    throw std::invalid_argument("situation id must be 1..4");
  }
  return kSituations[static_cast<std::size_t>(id - 1)];
}

Raster make_phantom(const PhantomGeometry& geom, const Situation& sit) {
  geom.validate();
  const auto mask = geom.feature_mask();
  std::vector<double> data(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) data[i] = mask[i] ? sit.strip_mean : sit.background_mean;
  return Raster(geom.width, geom.height, std::move(data));
}

Raster corrupt(const Raster& phantom, double looks, RandomStream& stream) {
  if (!std::isfinite(looks) || looks < 1.0) throw std::invalid_argument("corrupt: looks must be >= 1");
  std::vector<double> data(phantom.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = phantom.values()[i] * (stream.gamma(looks) / looks);
  }
  return Raster(phantom.width(), phantom.height(), std::move(data));
}

Raster corrupt(const Raster& phantom, const Situation& sit, RandomStream& stream) {
  return corrupt(phantom, sit.looks, stream);
}

RandomStream replicate_stream(std::uint64_t master_seed, int situation_id, int replicate) {
  return RandomStream(master_seed,
                      {static_cast<std::uint64_t>(situation_id), static_cast<std::uint64_t>(replicate)});
}

std::string FilterEntry::name() const {
  switch (family) {
    case FilterFamily::Input:
      return "input";
    case FilterFamily::Lee:
      return "lee";
    case FilterFamily::Stochastic:
      return std::string(distance_name(distance));
  }
  return "unknown";
}

RunPlan RunPlan::fast() {
  RunPlan plan;
  plan.replicates = 20;
  plan.geometry = default_geometry(64);
  return plan;
}

void RunPlan::validate() const {
  if (situations.empty()) throw std::invalid_argument("run plan: no situations");
  for (int id : situations) (void)situation(id);
  if (replicates < 1) throw std::invalid_argument("run plan: replicates must be >= 1");
  if (filters.empty()) throw std::invalid_argument("run plan: no filters");
  for (const FilterEntry& f : filters) {
    if (f.family != FilterFamily::Input && f.window != 5 && f.window != 7) {
      throw std::invalid_argument("run plan: filter window must be 5 or 7");
    }
  }
  if (levels.empty()) throw std::invalid_argument("run plan: no significance levels");
  for (double a : levels) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("run plan: levels must lie in (0, 1)");
  }
  geometry.validate();
  TestConfig probe = test;
  probe.num_tests = 8;
  probe.validate();
}

namespace {

std::vector<ProtocolRow> run_replicate(const RunPlan& plan, const Raster& phantom, const Situation& sit,
                                       int replicate) {
  RandomStream stream = replicate_stream(plan.master_seed, sit.id, replicate);
  const Raster noisy = corrupt(phantom, sit, stream);

  std::vector<ProtocolRow> rows;
  rows.reserve(plan.filters.size() * plan.levels.size());
  auto emit = [&](const FilterEntry& f, double level, const MetricReport& m) {
    rows.push_back(ProtocolRow{f.name(), f.window, level, sit.id, replicate, m});
  };
  auto measure = [&](auto&& produce) {
    try {
      const Raster out = produce();
      return evaluate(phantom, out, &plan.geometry);
    } catch (const std::exception&) {
      return MetricReport{};
    }
  };

  for (const FilterEntry& f : plan.filters) {
    switch (f.family) {
      case FilterFamily::Input: {
        const MetricReport m = measure([&] { return noisy; });
        for (double level : plan.levels) emit(f, level, m);
        break;
      }
      case FilterFamily::Lee: {
        const MetricReport m = measure([&] { return lee_filter(noisy, LeeSpec{f.window, sit.looks}); });
        for (double level : plan.levels) emit(f, level, m);
        break;
      }
      case FilterFamily::Stochastic: {
        for (double level : plan.levels) {
          TestConfig cfg = plan.test;
          cfg.kind = f.distance;
          cfg.overall_alpha = level;
          emit(f, level, measure([&] { return filter_image(noisy, FilterSpec(f.window, cfg)); }));
        }
        break;
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<ProtocolRow> run_protocol(const RunPlan& plan, int threads) {
  plan.validate();
  std::vector<Raster> phantoms;
  for (int id : plan.situations) phantoms.push_back(make_phantom(plan.geometry, situation(id)));

  const int tasks = static_cast<int>(plan.situations.size()) * plan.replicates;
  std::vector<std::vector<ProtocolRow>> per_task(static_cast<std::size_t>(tasks));
  detail::parallel_for(tasks, threads, [&](int t) {
    const auto s = static_cast<std::size_t>(t / plan.replicates);
    const int replicate = t % plan.replicates;
    per_task[static_cast<std::size_t>(t)] = run_replicate(plan, phantoms[s], situation(plan.situations[s]), replicate);
  });

  std::vector<ProtocolRow> rows;
  for (auto& block : per_task) {
    for (auto& r : block) rows.push_back(std::move(r));
  }
  return rows;
}

std::string protocol_csv_header() { return "filter,window,level,situation,replicate," + MetricReport::csv_header(); }

std::string protocol_csv_row(const ProtocolRow& row) {
  return row.filter + ',' + std::to_string(row.window) + ',' + format_value(row.level) + ',' +
         std::to_string(row.situation) + ',' + std::to_string(row.replicate) + ',' + row.metrics.csv_row();
}

void write_protocol_csv(const std::vector<ProtocolRow>& rows, std::ostream& out,
                        const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
  out << protocol_csv_header() << '\n';
  for (const ProtocolRow& r : rows) out << protocol_csv_row(r) << '\n';
}

}  // namespace speckle
