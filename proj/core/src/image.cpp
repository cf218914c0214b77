#include "speckle/image.hpp"

#include <algorithm>
#include <cmath>

namespace speckle {
namespace {

void check_intensity(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("raster intensities must be finite and non-negative");
  }
}

}  // namespace

Raster::Raster(int width, int height, double fill)
    : Raster(width, height,
             std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                     static_cast<std::size_t>(std::max(height, 0)),
                                 fill)) {}

Raster::Raster(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("raster dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("raster data length does not match width x height");
  }
  std::for_each(data_.begin(), data_.end(), check_intensity);
}

PixelSample::PixelSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("pixel sample must hold at least one value");
  }
  std::for_each(values_.begin(), values_.end(), check_intensity);
}

Raster pad_mirror(const Raster& img, int margin) {
  if (margin < 0) {
    throw std::invalid_argument("pad_mirror: negative margin");
  }
  if (margin >= std::min(img.width(), img.height())) {
    // A single-pixel image can still be padded by one: reflection about a lone
    // pixel is the pixel itself.
    if (!(img.width() == 1 && img.height() == 1 && margin <= 1)) {
      throw std::invalid_argument("pad_mirror: margin must be smaller than the image side");
    }
  }
  if (margin == 0) return img;

  const int w = img.width() + 2 * margin;
  const int h = img.height() + 2 * margin;
  std::vector<double> out(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int r = 0; r < h; ++r) {
    const int src_r = std::clamp(reflect_index(r - margin, img.height()), 0, img.height() - 1);
    for (int c = 0; c < w; ++c) {
      const int src_c = std::clamp(reflect_index(c - margin, img.width()), 0, img.width() - 1);
      out[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)] =
          img.at(src_r, src_c);
    }
  }
  return Raster(w, h, std::move(out));
}

PixelSample extract(const Raster& img, Pixel center, std::span<const Offset> offsets) {
  std::vector<double> values;
  values.reserve(offsets.size());
  for (const Offset& o : offsets) {
    const int r = center.row + o.drow;
    const int c = center.col + o.dcol;
    if (!img.contains(r, c)) {
      throw std::out_of_range("extract: offset leaves the image");
    }
    values.push_back(img.at(r, c));
  }
  return PixelSample(std::move(values));
}

PixelSample extract(const Raster& img, const Rect& rect) {
  if (rect.height <= 0 || rect.width <= 0 || !img.contains(rect.row, rect.col) ||
      !img.contains(rect.row + rect.height - 1, rect.col + rect.width - 1)) {
    throw std::out_of_range("extract: rectangle leaves the image");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(rect.height) * static_cast<std::size_t>(rect.width));
  for (int r = rect.row; r < rect.row + rect.height; ++r) {
    for (int c = rect.col; c < rect.col + rect.width; ++c) values.push_back(img.at(r, c));
  }
  return PixelSample(std::move(values));
}

}  // namespace speckle
