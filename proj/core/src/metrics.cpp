#include "speckle/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "speckle/numeric.hpp"

namespace speckle {
namespace {

void require_same_size(const Raster& x, const Raster& y) {
  if (x.width() != y.width() || x.height() != y.height()) {
    throw std::invalid_argument("images must have the same dimensions");
  }
}

double mean_along(const Raster& img, const Line& line, int row_shift) {
  CompensatedSum s;
  for (Pixel p : line.pixels()) s.add(img.at(p.row + row_shift, p.col));
  return s.value() / static_cast<double>(line.length);
}

std::vector<double> laplacian(const Raster& img) {
  const Raster p = pad_mirror(img, 1);
  std::vector<double> out(img.size());
  std::size_t i = 0;
  for (int r = 1; r <= img.height(); ++r) {
    for (int c = 1; c <= img.width(); ++c) {
      out[i++] = p.at(r - 1, c) + p.at(r + 1, c) + p.at(r, c - 1) + p.at(r, c + 1) - 4.0 * p.at(r, c);
    }
  }
  return out;
}

template <typename F>
std::optional<double> attempt(F&& f) {
  try {
    const double v = f();
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

double enl(const PixelSample& region) {
  const auto v = region.values();
  if (v.size() < 2) throw std::invalid_argument("enl: region needs at least two pixels");
  const double var = sample_variance(v);
  if (!(var > 0.0)) throw DegenerateError("enl: constant region");
  const double m = mean(v);
  return m * m / var;
}

double line_contrast_value(const Raster& img, const PhantomGeometry& geom) {
  if (img.width() != geom.width || img.height() != geom.height) {
    throw std::invalid_argument("line contrast: image does not match the geometry");
  }
  const Line& line = geom.lines.at(static_cast<std::size_t>(geom.contrast_line));
  return 2.0 * mean_along(img, line, 0) - mean_along(img, line, -1) - mean_along(img, line, 1);
}

double line_contrast(const Raster& img, const Raster& phantom, const PhantomGeometry& geom) {
  return std::abs(line_contrast_value(img, geom) - line_contrast_value(phantom, geom));
}

EdgeMeasures edge_measures(const Raster& img, const Raster& phantom, const PhantomGeometry& geom) {
  require_same_size(img, phantom);
  auto diffs = [&](const Raster& r) {
    const PixelSample a = extract(r, geom.edge_strip_a);
    const PixelSample b = extract(r, geom.edge_strip_b);
    return std::array<double, 2>{std::abs(mean(a.values()) - mean(b.values())),
                                 std::abs(sample_variance(a.values()) - sample_variance(b.values()))};
  };
  const auto di = diffs(img);
  const auto dp = diffs(phantom);
  return EdgeMeasures{std::abs(di[0] - dp[0]), std::abs(di[1] - dp[1])};
}

std::optional<double> q_index_window(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("q_index_window: size mismatch");
  const double mx = mean(x);
  const double my = mean(y);
  CompensatedSum sxx;
  CompensatedSum syy;
  CompensatedSum sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  const auto n1 = static_cast<double>(x.size() - 1);
  const double vx = sxx.value() / n1;
  const double vy = syy.value() / n1;
  const double cxy = sxy.value() / n1;
  const double sx = std::sqrt(vx);
  const double sy = std::sqrt(vy);
  const double lum_den = mx * mx + my * my;
  const double con_den = vx + vy;
  if (sx * sy == 0.0 || lum_den == 0.0 || con_den == 0.0) return std::nullopt;
  const double correlation = cxy / (sx * sy);
  const double luminance = 2.0 * mx * my / lum_den;
  const double contrast = 2.0 * sx * sy / con_den;
  return correlation * luminance * contrast;
}

QIndex q_index(const Raster& x, const Raster& y) {
  require_same_size(x, y);
  if (x.width() < kQWindow || x.height() < kQWindow) {
    throw std::invalid_argument("q_index: image smaller than the 8x8 window");
  }
  std::vector<double> qs;
  QIndex out;
  std::array<double, kQWindow * kQWindow> wx{};
  std::array<double, kQWindow * kQWindow> wy{};
  for (int r = 0; r + kQWindow <= x.height(); ++r) {
    for (int c = 0; c + kQWindow <= x.width(); ++c) {
      std::size_t k = 0;
      for (int dr = 0; dr < kQWindow; ++dr) {
        for (int dc = 0; dc < kQWindow; ++dc, ++k) {
          wx[k] = x.at(r + dr, c + dc);
          wy[k] = y.at(r + dr, c + dc);
        }
      }
      if (auto q = q_index_window(wx, wy)) {
        qs.push_back(*q);
      } else {
        ++out.windows_skipped;
      }
    }
  }
  if (qs.empty()) throw DegenerateError("q_index: no window with non-zero denominators");
  out.windows_used = qs.size();
  out.mean = mean(qs);
  out.stddev = qs.size() > 1 ? std::sqrt(sample_variance(qs)) : 0.0;
  return out;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: size mismatch");
  const double ma = mean(a);
  const double mb = mean(b);
  CompensatedSum saa;
  CompensatedSum sbb;
  CompensatedSum sab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa.add(da * da);
    sbb.add(db * db);
    sab.add(da * db);
  }
  if (!(saa.value() > 0.0) || !(sbb.value() > 0.0)) throw DegenerateError("pearson: constant input");
  return std::clamp(sab.value() / std::sqrt(saa.value() * sbb.value()), -1.0, 1.0);
}

double beta_rho(const Raster& x, const Raster& y) {
  require_same_size(x, y);
  if (x.width() < 3 || x.height() < 3) throw std::invalid_argument("beta_rho: images must be at least 3x3");
  return pearson(laplacian(x), laplacian(y));
}

ErrorMetrics error_metrics(const Raster& x, const Raster& y) {
  require_same_size(x, y);
  const auto [x_lo, x_hi] = std::minmax_element(x.values().begin(), x.values().end());
  const auto [y_lo, y_hi] = std::minmax_element(y.values().begin(), y.values().end());
  const double lo = std::min(*x_lo, *y_lo);
  const double range = std::max(*x_hi, *y_hi) - lo;
  if (!(range > 0.0)) throw DegenerateError("error_metrics: joint intensity range is empty");

  CompensatedSum abs_err;
  CompensatedSum sq_err;
  CompensatedSum sq_ref;
  CompensatedSum dcon;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double xj = (x.values()[j] - lo) / range;
    const double yj = (y.values()[j] - lo) / range;
    const double d = xj - yj;
    abs_err.add(std::abs(d));
    sq_err.add(d * d);
    sq_ref.add(xj * xj);
    dcon.add(std::abs(d) / (kDconAlpha + xj + yj));
  }
  if (!(sq_ref.value() > 0.0)) throw DegenerateError("error_metrics: normalized reference is identically zero");
  const auto n = static_cast<double>(x.size());
  return ErrorMetrics{abs_err.value() / n, sq_err.value() / n, sq_err.value() / sq_ref.value(), dcon.value() / n};
}

std::string format_value(std::optional<double> v) {
  if (!v) return "NA";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), *v);
  return std::string(buf.data(), end);
}

std::string MetricReport::csv_header() {
  return "enl,line_contrast_error,edge_gradient,edge_variance,q_mean,q_std,beta_rho,mae,mse,nmse,dcon";
}

std::string MetricReport::csv_row() const {
  std::string row;
  for (const auto& v : {enl, line_contrast_error, edge_gradient, edge_variance, q_mean, q_std, beta_rho, mae, mse,
                        nmse, dcon}) {
    if (!row.empty()) row += ',';
    row += format_value(v);
  }
  return row;
}

MetricReport evaluate(const Raster& reference, const Raster& test, const PhantomGeometry* geom) {
  require_same_size(reference, test);
  MetricReport rep;
  if (geom != nullptr) {
    rep.enl = attempt([&] { return enl(extract(test, geom->background)); });
    rep.line_contrast_error = attempt([&] { return line_contrast(test, reference, *geom); });
    std::optional<EdgeMeasures> edges;
    try {
      edges = edge_measures(test, reference, *geom);
    } catch (const std::exception&) {
    }
    if (edges) {
      rep.edge_gradient = edges->gradient;
      rep.edge_variance = edges->variance;
    }
  }
  try {
    const QIndex q = q_index(reference, test);
    rep.q_mean = q.mean;
    rep.q_std = q.stddev;
  } catch (const std::exception&) {
  }
  rep.beta_rho = attempt([&] { return beta_rho(reference, test); });
  try {
    const ErrorMetrics e = error_metrics(reference, test);
    rep.mae = e.mae;
    rep.mse = e.mse;
    rep.nmse = e.nmse;
    rep.dcon = e.dcon;
  } catch (const std::exception&) {
  }
  return rep;
}

}  // namespace speckle
