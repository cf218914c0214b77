#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "speckle/image.hpp"
#include "speckle/phantom.hpp"

namespace speckle {

/// Gray-level constant of the contrast-distortion measure.
inline constexpr double kDconAlpha = 23.0 / 255.0;

/// Equivalent number of looks, (mean / stdev)^2 with the unbiased variance.
/// Throws DegenerateError for a constant region, std::invalid_argument for < 2 values.
[[nodiscard]] double enl(const PixelSample& region);

/// 2 * mean(line) - mean(row above) - mean(row below) along the geometry's contrast line.
[[nodiscard]] double line_contrast_value(const Raster& img, const PhantomGeometry& geom);

/// |contrast(img) - contrast(phantom)|; smaller is better.
[[nodiscard]] double line_contrast(const Raster& img, const Raster& phantom, const PhantomGeometry& geom);

struct EdgeMeasures {
  double gradient = 0.0;
  double variance = 0.0;
};

/// Deviation from the phantom of the absolute difference between the two edge
/// strips, for means (gradient) and unbiased variances (variance).
[[nodiscard]] EdgeMeasures edge_measures(const Raster& img, const Raster& phantom, const PhantomGeometry& geom);

/// Universal quality index of a single pair of equally sized samples.
/// Returns nullopt when one of the three factors has a zero denominator.
[[nodiscard]] std::optional<double> q_index_window(std::span<const double> x, std::span<const double> y);

struct QIndex {
  double mean = 0.0;
  /// Unbiased standard deviation across windows (0 when only one window is usable).
  double stddev = 0.0;
  std::size_t windows_used = 0;
  std::size_t windows_skipped = 0;
};

inline constexpr int kQWindow = 8;

/// Q over every 8x8 window at stride 1. Throws std::invalid_argument on a size
/// mismatch or an image smaller than 8x8; DegenerateError if no window is usable.
[[nodiscard]] QIndex q_index(const Raster& x, const Raster& y);

/// Pearson correlation between the 4-neighbour Laplacians of the mirror-padded
/// images. Throws DegenerateError when either Laplacian is constant.
[[nodiscard]] double beta_rho(const Raster& x, const Raster& y);

[[nodiscard]] double pearson(std::span<const double> a, std::span<const double> b);

struct ErrorMetrics {
  double mae = 0.0;
  double mse = 0.0;
  double nmse = 0.0;
  double dcon = 0.0;
};

/// MAE, MSE, NMSE and DCON of test image y against reference x after both are
/// jointly min-max normalized to [0, 1]. Throws DegenerateError if the joint
/// range is empty or the normalized reference is identically zero.
[[nodiscard]] ErrorMetrics error_metrics(const Raster& x, const Raster& y);

/// One row of quality measures. Missing values are measures that could not be
/// computed (no geometry, degenerate data).
struct MetricReport {
  std::optional<double> enl;
  std::optional<double> line_contrast_error;
  std::optional<double> edge_gradient;
  std::optional<double> edge_variance;
  std::optional<double> q_mean;
  std::optional<double> q_std;
  std::optional<double> beta_rho;
  std::optional<double> mae;
  std::optional<double> mse;
  std::optional<double> nmse;
  std::optional<double> dcon;

  /// "enl,line_contrast_error,edge_gradient,edge_variance,q_mean,q_std,beta_rho,mae,mse,nmse,dcon"
  [[nodiscard]] static std::string csv_header();
  /// Values in header order, shortest round-trip decimal, "NA" for missing.
  [[nodiscard]] std::string csv_row() const;
};

/// Every measure that needs a reference. Geometry-based ones are skipped when
/// geom is null. Individual failures become missing values.
[[nodiscard]] MetricReport evaluate(const Raster& reference, const Raster& test, const PhantomGeometry* geom);

/// Formats a value for CSV output: shortest round-trip decimal or "NA".
[[nodiscard]] std::string format_value(std::optional<double> v);

}  // namespace speckle
