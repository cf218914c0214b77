#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace speckle {

/// Thrown when a file or header cannot be parsed, or holds values a Raster cannot carry.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a statistic is undefined for the given data (constant regions, empty ranges).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Pixel {
  int row = 0;
  int col = 0;
};

/// Offset relative to a window center.
struct Offset {
  int drow = 0;
  int dcol = 0;

  friend bool operator==(const Offset&, const Offset&) = default;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// Row-major image of non-negative, finite intensities. Immutable after construction.
class Raster {
 public:
  Raster() = default;
  /// Constant-valued raster.
  Raster(int width, int height, double fill = 0.0);
  Raster(int width, int height, std::vector<double> data);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  [[nodiscard]] double at(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(col)];
  }
  [[nodiscard]] bool contains(int row, int col) const noexcept {
    return row >= 0 && col >= 0 && row < height_ && col < width_;
  }
  [[nodiscard]] std::span<const double> values() const noexcept { return data_; }
  [[nodiscard]] std::span<const double> row(int r) const {
    return std::span<const double>(data_).subspan(
        static_cast<std::size_t>(r) * static_cast<std::size_t>(width_),
        static_cast<std::size_t>(width_));
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// A sample of intensities drawn from an image region, count >= 1.
class PixelSample {
 public:
  explicit PixelSample(std::vector<double> values);

  [[nodiscard]] std::size_t count() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Reflects the image about its borders without repeating the edge row/column,
/// so index -k maps to k. Throws std::invalid_argument if margin >= min(width, height).
[[nodiscard]] Raster pad_mirror(const Raster& img, int margin);

/// Reflected index for a coordinate within [-(n-1), 2n-2].
[[nodiscard]] constexpr int reflect_index(int i, int n) noexcept {
  if (i < 0) return -i;
  if (i >= n) return 2 * (n - 1) - i;
  return i;
}

/// Values at center + offset, in offset order. Throws std::out_of_range if any
/// offset leaves the image.
[[nodiscard]] PixelSample extract(const Raster& img, Pixel center, std::span<const Offset> offsets);

/// Rectangle in pixel coordinates, half-open in both directions.
struct Rect {
  int row = 0;
  int col = 0;
  int height = 0;
  int width = 0;

  [[nodiscard]] bool contains(int r, int c) const noexcept {
    return r >= row && r < row + height && c >= col && c < col + width;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// All pixels inside rect. Throws std::out_of_range if the rect leaves the image.
[[nodiscard]] PixelSample extract(const Raster& img, const Rect& rect);

}  // namespace speckle
