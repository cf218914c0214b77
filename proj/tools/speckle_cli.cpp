// speckle: batch front end for phantom simulation, despeckling and evaluation.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speckle/divergence.hpp"
#include "speckle/lee_filter.hpp"
#include "speckle/masks.hpp"
#include "speckle/metrics.hpp"
#include "speckle/phantom.hpp"
#include "speckle/protocol.hpp"
#include "speckle/raster_io.hpp"
#include "speckle/stochastic_filter.hpp"

namespace fs = std::filesystem;
using namespace speckle;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPECKLE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SPECKLE_SEED is not an unsigned integer");
    }
  }
  return 1;
}

RasterFormat resolve_format(const std::string& flag, const fs::path& path) {
  if (!flag.empty()) {
    if (auto f = parse_format(flag)) return *f;
    throw UsageError("unknown format '" + flag + "'");
  }
  if (auto f = format_from_extension(path)) return *f;
  throw UsageError("cannot infer the raster format of " + path.string() + "; pass --format");
}

Rect parse_rect(const std::string& text) {
  Rect r;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(text);
  if (!(in >> r.row >> c1 >> r.col >> c2 >> r.height >> c3 >> r.width) || c1 != ',' || c2 != ',' || c3 != ',') {
    throw UsageError("region must be row,col,height,width");
  }
  return r;
}

std::optional<PhantomGeometry> geometry_for(const std::string& file, const Raster& img, bool allow_default) {
  if (!file.empty()) return read_geometry(fs::path(file));
  if (allow_default && img.width() == img.height() && img.width() >= 64) return default_geometry(img.width());
  return std::nullopt;
}

struct Options {
  std::string format;
  std::string in;
  std::string out;
  std::string geometry;
  std::string geometry_out;
  int situation_id = 1;
  int size = 128;
  std::optional<int> mc_size;
  std::optional<int> situation_opt;
  std::optional<double> looks;
  std::uint64_t seed = 1;
  int replicate = 0;
  std::string filter = "hellinger";
  int window = 5;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<int> dof;
  std::string shared_looks;
  std::string looks_region;
  int threads = 1;
  std::string ref;
  std::string test;
  bool no_geometry = false;
  bool fast = false;
  std::optional<int> replicates;
  std::vector<int> situations;
  std::vector<double> levels;
  std::vector<std::string> filters;
};

SharedLooks parse_shared(const std::string& s) {
  if (s.empty() || s == "central") return SharedLooks::Central;
  if (s == "pooled") return SharedLooks::Pooled;
  throw UsageError("--shared-looks must be central or pooled");
}

FilterEntry parse_filter_entry(const std::string& s) {
  if (s == "input") return {FilterFamily::Input, DistanceKind::Hellinger, 0};
  const auto digit = s.find_first_of("57");
  if (digit == std::string::npos || digit + 1 != s.size()) {
    throw UsageError("filter entries look like input, lee5, hellinger7, kl5, renyi7");
  }
  const std::string base = s.substr(0, digit);
  const int window = s[digit] - '0';
  if (base == "lee") return {FilterFamily::Lee, DistanceKind::Hellinger, window};
  if (auto d = parse_distance(base)) return {FilterFamily::Stochastic, *d, window};
  throw UsageError("unknown filter '" + base + "'");
}

int cmd_phantom(const Options& o) {
  const PhantomGeometry geom = o.geometry.empty() ? default_geometry(o.size) : read_geometry(fs::path(o.geometry));
  const Raster img = make_phantom(geom, situation(o.situation_id));
  write_raster(img, fs::path(o.out), resolve_format(o.format, o.out));
  if (!o.geometry_out.empty()) {
    std::ofstream g(o.geometry_out);
    if (!g) throw std::runtime_error("cannot open " + o.geometry_out);
    write_geometry(geom, g);
  }
  return 0;
}

int cmd_corrupt(const Options& o) {
  if (o.situation_opt && o.looks) throw UsageError("pass either --situation or --looks, not both");
  if (!o.situation_opt && !o.looks) throw UsageError("corrupt needs --situation or --looks");
  const Raster img = read_raster(fs::path(o.in), resolve_format(o.format, o.in));
  const int sid = o.situation_opt.value_or(0);
  const double looks = o.situation_opt ? situation(*o.situation_opt).looks : *o.looks;
  RandomStream stream = replicate_stream(o.seed, sid, o.replicate);
  write_raster(corrupt(img, looks, stream), fs::path(o.out), resolve_format(o.format, o.out));
  return 0;
}

int cmd_filter(const Options& o) {
  const Raster img = read_raster(fs::path(o.in), resolve_format(o.format, o.in));
  if (o.filter == "lee") {
    if (o.alpha || o.beta || o.dof || !o.shared_looks.empty()) {
      throw UsageError("--alpha, --beta, --dof and --shared-looks do not apply to the lee filter");
    }
    if (o.looks && !o.looks_region.empty()) throw UsageError("pass either --looks or --looks-region");
    double looks = 0.0;
    if (o.looks) {
      looks = *o.looks;
    } else if (!o.looks_region.empty()) {
      looks = std::max(1.0, enl(extract(img, parse_rect(o.looks_region))));
      std::cerr << "lee: nominal looks estimated from region = " << format_value(looks) << '\n';
    } else {
      throw UsageError("the lee filter needs --looks or --looks-region");
    }
    const Raster out = lee_filter(img, LeeSpec{o.window, looks}, o.threads);
    write_raster(out, fs::path(o.out), resolve_format(o.format, o.out));
    return 0;
  }

  const auto kind = parse_distance(o.filter);
  if (!kind) throw UsageError("--filter must be hellinger, kl, renyi or lee");
  if (o.looks || !o.looks_region.empty()) throw UsageError("--looks applies to the lee filter only");
  if (o.beta && *kind != DistanceKind::Renyi) throw UsageError("--beta applies to the renyi filter only");
  TestConfig cfg;
  cfg.kind = *kind;
  cfg.overall_alpha = o.alpha.value_or(0.2);
  cfg.renyi_order = o.beta.value_or(0.5);
  cfg.dof = o.dof.value_or(1);
  cfg.shared_looks = parse_shared(o.shared_looks);
  FilterSpec spec(o.window, cfg);
  const FilterResult res = filter_image_detailed(img, spec, o.threads);
  write_raster(res.image, fs::path(o.out), resolve_format(o.format, o.out));
  std::cerr << "filter: eta = " << format_value(spec.eta()) << ", degenerate pixels = " << res.degenerate_pixels
            << ", accepted-region histogram =";
  for (std::size_t k : res.accepted_histogram) std::cerr << ' ' << k;
  std::cerr << '\n';
  return 0;
}

int cmd_evaluate(const Options& o) {
  const Raster ref = read_raster(fs::path(o.ref), resolve_format(o.format, o.ref));
  const Raster test = read_raster(fs::path(o.test), resolve_format(o.format, o.test));
  if (ref.width() != test.width() || ref.height() != test.height()) {
    throw UsageError("--ref and --test must have the same dimensions");
  }
  const auto geom = o.no_geometry ? std::nullopt : geometry_for(o.geometry, ref, true);
  if (geom && (geom->width != ref.width() || geom->height != ref.height())) {
    throw UsageError("geometry size does not match the images");
  }
  const MetricReport rep = evaluate(ref, test, geom ? &*geom : nullptr);
  std::cout << "# evaluate ref=" << o.ref << " test=" << o.test
            << " geometry=" << (o.geometry.empty() ? (geom ? "default" : "none") : o.geometry) << '\n';
  std::cout << MetricReport::csv_header() << '\n' << rep.csv_row() << '\n';
  return 0;
}

int cmd_montecarlo(const Options& o) {
  RunPlan plan = o.fast ? RunPlan::fast() : RunPlan{};
  if (!o.geometry.empty()) {
    plan.geometry = read_geometry(fs::path(o.geometry));
  } else if (o.mc_size) {
    plan.geometry = default_geometry(*o.mc_size);
  }
  if (o.replicates) plan.replicates = *o.replicates;
  if (!o.situations.empty()) plan.situations = o.situations;
  if (!o.levels.empty()) plan.levels = o.levels;
  if (!o.filters.empty()) {
    plan.filters.clear();
    for (const auto& f : o.filters) plan.filters.push_back(parse_filter_entry(f));
  }
  plan.master_seed = o.seed;
  plan.test.dof = o.dof.value_or(1);
  plan.test.renyi_order = o.beta.value_or(0.5);
  plan.test.shared_looks = parse_shared(o.shared_looks);
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto rows = run_protocol(plan, o.threads);

  // Everything that influences the numbers, and nothing that does not (threads, paths).
  std::ostringstream flags;
  flags << "montecarlo seed=" << plan.master_seed << " size=" << plan.geometry.height << 'x' << plan.geometry.width
        << " replicates=" << plan.replicates << " situations=";
  for (std::size_t i = 0; i < plan.situations.size(); ++i) flags << (i ? ";" : "") << plan.situations[i];
  flags << " levels=";
  for (std::size_t i = 0; i < plan.levels.size(); ++i) flags << (i ? ";" : "") << format_value(plan.levels[i]);
  flags << " filters=";
  for (std::size_t i = 0; i < plan.filters.size(); ++i) {
    const auto& f = plan.filters[i];
    flags << (i ? ";" : "") << f.name() << (f.family == FilterFamily::Input ? "" : std::to_string(f.window));
  }
  flags << " dof=" << plan.test.dof << " beta=" << format_value(plan.test.renyi_order)
        << " shared_looks=" << (plan.test.shared_looks == SharedLooks::Pooled ? "pooled" : "central")
        << " geometry=" << (o.geometry.empty() ? "default" : fs::path(o.geometry).filename().string())
        << " variate_algorithm=v" << kVariateAlgorithmVersion;

  if (o.out.empty() || o.out == "-") {
    write_protocol_csv(rows, std::cout, {flags.str()});
  } else {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + o.out);
    write_protocol_csv(rows, out, {flags.str()});
    if (!out) throw std::runtime_error("write failed for " + o.out);
  }
  return 0;
}

int cmd_masks(const Options& o) {
  std::cout << render_mask_table(o.window);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speckle reduction with stochastic-distance tests between Nagao-Matsuyama regions"};
  app.require_subcommand(1);
  Options o;
  try {
    o.seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::vector<std::string> formats = {"ascii", "ascii-matrix", "raw", "raw-f64-le", "pgm", "pgm16"};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Raster format (default: from file extension)")
        ->check(CLI::IsMember(formats));
  };

  auto* phantom = app.add_subcommand("phantom", "Write a noiseless phantom");
  phantom->add_option("--situation", o.situation_id, "Situation 1..4")->check(CLI::Range(1, 4));
  phantom->add_option("--size", o.size, "Side of the built-in square layout")->check(CLI::Range(64, 4096));
  phantom->add_option("--geometry", o.geometry, "Geometry file")->check(CLI::ExistingFile);
  phantom->add_option("--geometry-out", o.geometry_out, "Also write the geometry used");
  phantom->add_option("--out", o.out, "Output raster")->required();
  add_format(phantom);

  auto* corrupt_cmd = app.add_subcommand("corrupt", "Apply Gamma speckle to an image");
  corrupt_cmd->add_option("--in", o.in, "Input raster")->required()->check(CLI::ExistingFile);
  corrupt_cmd->add_option("--out", o.out, "Output raster")->required();
  corrupt_cmd->add_option("--situation", o.situation_opt, "Take the looks from situation 1..4")
      ->check(CLI::Range(1, 4));
  corrupt_cmd->add_option("--looks", o.looks, "Number of looks")->check(CLI::Range(1.0, 1.0e6));
  corrupt_cmd->add_option("--seed", o.seed, "Master seed (default: $SPECKLE_SEED or 1)");
  corrupt_cmd->add_option("--replicate", o.replicate, "Replicate index keying the stream")
      ->check(CLI::NonNegativeNumber);
  add_format(corrupt_cmd);

  auto* filter = app.add_subcommand("filter", "Despeckle an image");
  filter->add_option("--in", o.in, "Input raster")->required()->check(CLI::ExistingFile);
  filter->add_option("--out", o.out, "Output raster")->required();
  filter->add_option("--filter", o.filter, "hellinger | kl | renyi | lee")
      ->check(CLI::IsMember({"hellinger", "kl", "renyi", "lee"}));
  filter->add_option("--window", o.window, "Window side")->check(CLI::IsMember({5, 7}));
  filter->add_option("--alpha", o.alpha, "Family-wise significance (default 0.2)")
      ->check(CLI::Range(0.0, 1.0) & !CLI::IsMember({0.0, 1.0}));
  filter->add_option("--beta", o.beta, "Renyi order (default 0.5)")
      ->check(CLI::Range(0.0, 1.0) & !CLI::IsMember({0.0, 1.0}));
  filter->add_option("--dof", o.dof, "Chi-square degrees of freedom")->check(CLI::IsMember({1, 2}));
  filter->add_option("--shared-looks", o.shared_looks, "central | pooled")
      ->check(CLI::IsMember({"central", "pooled"}));
  filter->add_option("--looks", o.looks, "Lee nominal looks")->check(CLI::Range(1.0, 1.0e6));
  filter->add_option("--looks-region", o.looks_region, "Lee: estimate looks over row,col,height,width");
  filter->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
  add_format(filter);

  auto* eval = app.add_subcommand("evaluate", "Quality measures of --test against --ref as one CSV row");
  eval->add_option("--ref", o.ref, "Reference raster")->required()->check(CLI::ExistingFile);
  eval->add_option("--test", o.test, "Test raster")->required()->check(CLI::ExistingFile);
  eval->add_option("--geometry", o.geometry, "Geometry file (default: built-in layout for square images >= 64)")
      ->check(CLI::ExistingFile);
  eval->add_flag("--no-geometry", o.no_geometry, "Skip geometry-based measures");
  add_format(eval);

  auto* mc = app.add_subcommand("montecarlo", "Run the simulation protocol and write CSV");
  mc->add_flag("--fast", o.fast, "64x64 phantom, 20 replicates");
  mc->add_option("--seed", o.seed, "Master seed (default: $SPECKLE_SEED or 1)");
  mc->add_option("--out", o.out, "CSV path (default: standard output)");
  mc->add_option("--replicates", o.replicates, "Replicates per situation")->check(CLI::PositiveNumber);
  mc->add_option("--situations", o.situations, "Situation ids")->delimiter(',')->check(CLI::Range(1, 4));
  mc->add_option("--levels", o.levels, "Family-wise alphas, e.g. 0.2,0.1,0.01")->delimiter(',');
  mc->add_option("--filters", o.filters, "e.g. input,lee5,lee7,hellinger5,hellinger7")->delimiter(',');
  mc->add_option("--size", o.mc_size, "Side of the built-in layout (default 128, or 64 with --fast)")->check(CLI::Range(64, 4096));
  mc->add_option("--geometry", o.geometry, "Geometry file")->check(CLI::ExistingFile);
  mc->add_option("--dof", o.dof, "Chi-square degrees of freedom")->check(CLI::IsMember({1, 2}));
  mc->add_option("--beta", o.beta, "Renyi order")->check(CLI::Range(0.0, 1.0) & !CLI::IsMember({0.0, 1.0}));
  mc->add_option("--shared-looks", o.shared_looks, "central | pooled")->check(CLI::IsMember({"central", "pooled"}));
  mc->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));

  auto* masks = app.add_subcommand("masks", "Print the region-id table of a window");
  masks->add_option("--window", o.window, "Window side")->check(CLI::IsMember({5, 7}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*phantom) return cmd_phantom(o);
    if (*corrupt_cmd) return cmd_corrupt(o);
    if (*filter) return cmd_filter(o);
    if (*eval) return cmd_evaluate(o);
    if (*mc) return cmd_montecarlo(o);
    if (*masks) return cmd_masks(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
