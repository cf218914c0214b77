#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "speckle/image.hpp"

namespace speckle {

/// One-pixel-wide straight line: `length` pixels from `start`, stepping by (drow, dcol).
struct Line {
  Pixel start;
  int drow = 0;
  int dcol = 1;
  int length = 0;

  [[nodiscard]] std::vector<Pixel> pixels() const;
};

/// Layout of a synthetic phantom and the regions each quality measure reads.
///
/// Plain-text file format, one directive per line, '#' starts a comment:
///
///     size <height> <width>
///     line <row> <col> <drow> <dcol> <length>     (repeatable)
///     point <row> <col>                           (repeatable)
///     block <row> <col> <height> <width>          (repeatable)
///     background <row> <col> <height> <width>
///     contrast_line <index into the line list>    (must be horizontal)
///     edge_strip <row> <col> <height> <width>     (exactly twice)
///
/// Lines, points and blocks are "feature" pixels; everything else is background.
struct PhantomGeometry {
  int height = 0;
  int width = 0;
  std::vector<Line> lines;
  std::vector<Pixel> points;
  std::vector<Rect> blocks;
  /// Homogeneous region used for the equivalent number of looks.
  Rect background;
  int contrast_line = 0;
  /// Bands flanking an edge, compared by the edge gradient and variance measures.
  Rect edge_strip_a;
  Rect edge_strip_b;

  /// Throws std::invalid_argument if anything leaves the image, the background
  /// touches a feature pixel, the contrast line is not horizontal or its
  /// flanking rows leave the image, or an edge strip holds fewer than 2 pixels.
  void validate() const;

  /// Row-major mask of feature pixels.
  [[nodiscard]] std::vector<bool> feature_mask() const;
  [[nodiscard]] std::size_t feature_count() const;

  friend bool operator==(const PhantomGeometry&, const PhantomGeometry&);
};

/// Built-in layout for a square image of side `size` (>= 64), proportional to
/// the 128x128 reference: horizontal, vertical and diagonal lines, a 4x4 grid
/// of points, one 32x32 block (scaled) whose left edge is flanked by 3-pixel
/// strips, and a 40x40 (scaled) background patch for looks estimation.
[[nodiscard]] PhantomGeometry default_geometry(int size);

[[nodiscard]] PhantomGeometry read_geometry(std::istream& in);
[[nodiscard]] PhantomGeometry read_geometry(const std::filesystem::path& path);
void write_geometry(const PhantomGeometry& geom, std::ostream& out);

}  // namespace speckle
