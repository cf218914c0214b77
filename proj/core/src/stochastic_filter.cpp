#include "speckle/stochastic_filter.hpp"

#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "speckle/gamma.hpp"
#include "speckle/numeric.hpp"

namespace speckle {
namespace {

TestConfig with_eight_tests(TestConfig cfg) {
  cfg.num_tests = 8;
  cfg.validate();
  return cfg;
}

bool is_constant(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs.front(); });
}

}  // namespace

FilterSpec::FilterSpec(int window, TestConfig test)
    : window_(window),
      test_(with_eight_tests(test)),
      masks_(nm_masks(window)),
      eta_(sidak_level(test_.overall_alpha, test_.num_tests)) {}

PixelDecision filter_pixel_detailed(const Raster& padded, Pixel center, const FilterSpec& spec) {
  const auto& masks = spec.masks();
  const PixelSample central = extract(padded, center, masks[0].offsets);
  const auto central_values = central.values();

  if (is_constant(central_values)) {
    return PixelDecision{central_values.front(), 0, true};
  }

  const MleFit fit1 = mle(central);
  const TestConfig& cfg = spec.test();

  CompensatedSum sum;
  std::size_t count = central.count();
  for (double v : central_values) sum.add(v);

  int accepted = 0;
  for (std::size_t k = 1; k < masks.size(); ++k) {
    const PixelSample region = extract(padded, center, masks[k].offsets);
    const double region_mean = mean(region.values());
    bool rejected = true;
    if (region_mean > 0.0) {
      double shared = fit1.params.looks();
      if (cfg.shared_looks == SharedLooks::Pooled) {
        std::vector<double> pooled(central_values.begin(), central_values.end());
        pooled.insert(pooled.end(), region.values().begin(), region.values().end());
        shared = mle(PixelSample(std::move(pooled))).params.looks();
      }
      // Under the common-looks statistics only the region mean enters; its own
      // looks estimate is irrelevant to the decision.
      const GammaParams region_params(fit1.params.looks(), region_mean);
      const double s = statistic(cfg, fit1.params, region_params, central.count(), region.count(), shared);
      rejected = chi2_survival(s, cfg.dof) <= spec.eta();
    }
    if (!rejected) {
      ++accepted;
      for (double v : region.values()) sum.add(v);
      count += region.count();
    }
  }
  return PixelDecision{sum.value() / static_cast<double>(count), accepted, false};
}

double filter_pixel(const Raster& padded, Pixel center, const FilterSpec& spec) {
  return filter_pixel_detailed(padded, center, spec).value;
}

FilterResult filter_image_detailed(const Raster& img, const FilterSpec& spec, int threads) {
  if (img.width() < spec.window() || img.height() < spec.window()) {
    throw std::invalid_argument("filter_image: image smaller than the filter window");
  }
  const int margin = spec.window() / 2;
  const Raster padded = pad_mirror(img, margin);
  const int w = img.width();
  const int h = img.height();
  std::vector<double> out(img.size());
  std::vector<unsigned char> accepted(img.size());
  std::vector<unsigned char> degenerate(img.size());

  detail::parallel_for(h, threads, [&](int r) {
    for (int c = 0; c < w; ++c) {
      const PixelDecision d = filter_pixel_detailed(padded, Pixel{r + margin, c + margin}, spec);
      const auto i = static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c);
      out[i] = d.value;
      accepted[i] = static_cast<unsigned char>(d.accepted);
      degenerate[i] = d.degenerate ? 1 : 0;
    }
  });

  FilterResult result{Raster(w, h, std::move(out)), 0, {}};
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    if (degenerate[i]) {
      ++result.degenerate_pixels;
    } else {
      ++result.accepted_histogram[accepted[i]];
    }
  }
  return result;
}

Raster filter_image(const Raster& img, const FilterSpec& spec, int threads) {
  return filter_image_detailed(img, spec, threads).image;
}

}  // namespace speckle
