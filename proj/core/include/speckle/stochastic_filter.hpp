#pragma once

#include <array>
#include <cstddef>

#include "speckle/divergence.hpp"
#include "speckle/image.hpp"
#include "speckle/masks.hpp"

namespace speckle {

/// Configuration of the test-and-average filter. The test family always holds
/// eight comparisons (regions 2..9 against region 1).
class FilterSpec {
 public:
  /// Throws std::invalid_argument for a window other than 5 or 7 or an invalid
  /// test configuration. test.num_tests is forced to 8.
  FilterSpec(int window, TestConfig test);

  [[nodiscard]] int window() const noexcept { return window_; }
  [[nodiscard]] const TestConfig& test() const noexcept { return test_; }
  [[nodiscard]] const std::array<RegionMask, 9>& masks() const noexcept { return masks_; }
  [[nodiscard]] double eta() const noexcept { return eta_; }

 private:
  int window_;
  TestConfig test_;
  std::array<RegionMask, 9> masks_;
  double eta_;
};

struct PixelDecision {
  double value = 0.0;
  /// Number of peripheral regions whose law was not rejected (0..8).
  int accepted = 0;
  /// Region 1 was constant; tests were skipped and the region-1 mean returned.
  bool degenerate = false;
};

/// Filters one pixel of a padded raster: tests regions 2..9 against the
/// central block and averages every pixel of region 1 and the accepted regions.
/// If all eight are rejected the result is the region-1 mean.
[[nodiscard]] PixelDecision filter_pixel_detailed(const Raster& padded, Pixel center, const FilterSpec& spec);
[[nodiscard]] double filter_pixel(const Raster& padded, Pixel center, const FilterSpec& spec);

struct FilterResult {
  Raster image;
  std::size_t degenerate_pixels = 0;
  /// Histogram of accepted peripheral regions per pixel, index 0..8.
  std::array<std::size_t, 9> accepted_histogram{};
};

/// Mirror-pads by window/2 and filters every pixel once. Output is independent
/// of the thread count. Throws std::invalid_argument when the image is smaller
/// than the window.
[[nodiscard]] FilterResult filter_image_detailed(const Raster& img, const FilterSpec& spec, int threads = 1);
[[nodiscard]] Raster filter_image(const Raster& img, const FilterSpec& spec, int threads = 1);

}  // namespace speckle
