#include "speckle/phantom.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace speckle {

std::vector<Pixel> Line::pixels() const {
  std::vector<Pixel> out;
  out.reserve(static_cast<std::size_t>(std::max(length, 0)));
  for (int k = 0; k < length; ++k) out.push_back({start.row + k * drow, start.col + k * dcol});
  return out;
}

namespace {

bool rect_inside(const Rect& r, int h, int w) {
  return r.height > 0 && r.width > 0 && r.row >= 0 && r.col >= 0 && r.row + r.height <= h &&
         r.col + r.width <= w;
}

bool rect_equal(const Rect& a, const Rect& b) { return a == b; }

}  // namespace

void PhantomGeometry::validate() const {
  if (height <= 0 || width <= 0) throw std::invalid_argument("geometry: size must be positive");
  auto inside = [&](Pixel p) { return p.row >= 0 && p.col >= 0 && p.row < height && p.col < width; };
  for (const Line& l : lines) {
    if (l.length <= 0 || (l.drow == 0 && l.dcol == 0) || std::abs(l.drow) > 1 || std::abs(l.dcol) > 1) {
      throw std::invalid_argument("geometry: malformed line");
    }
    for (Pixel p : l.pixels()) {
      if (!inside(p)) throw std::invalid_argument("geometry: line leaves the image");
    }
  }
  for (Pixel p : points) {
    if (!inside(p)) throw std::invalid_argument("geometry: point outside the image");
  }
  for (const Rect& b : blocks) {
    if (!rect_inside(b, height, width)) throw std::invalid_argument("geometry: block leaves the image");
  }
  if (!rect_inside(background, height, width) || background.height * background.width < 2) {
    throw std::invalid_argument("geometry: background region invalid");
  }
  if (contrast_line < 0 || contrast_line >= static_cast<int>(lines.size())) {
    throw std::invalid_argument("geometry: contrast_line index out of range");
  }
  const Line& cl = lines[static_cast<std::size_t>(contrast_line)];
  if (cl.drow != 0 || cl.dcol != 1) throw std::invalid_argument("geometry: contrast line must be horizontal");
  if (cl.start.row < 1 || cl.start.row + 1 >= height) {
    throw std::invalid_argument("geometry: contrast line flanks leave the image");
  }
  for (const Rect* s : {&edge_strip_a, &edge_strip_b}) {
    if (!rect_inside(*s, height, width) || s->height * s->width < 2) {
      throw std::invalid_argument("geometry: edge strip invalid");
    }
  }
  const auto mask = feature_mask();
  for (int r = background.row; r < background.row + background.height; ++r) {
    for (int c = background.col; c < background.col + background.width; ++c) {
      if (mask[static_cast<std::size_t>(r * width + c)]) {
        throw std::invalid_argument("geometry: background region overlaps a feature");
      }
    }
  }
}

std::vector<bool> PhantomGeometry::feature_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), false);
  auto set = [&](Pixel p) {
    if (p.row >= 0 && p.col >= 0 && p.row < height && p.col < width) {
      mask[static_cast<std::size_t>(p.row * width + p.col)] = true;
    }
  };
  for (const Line& l : lines) {
    for (Pixel p : l.pixels()) set(p);
  }
  for (Pixel p : points) set(p);
  for (const Rect& b : blocks) {
    for (int r = b.row; r < b.row + b.height; ++r) {
      for (int c = b.col; c < b.col + b.width; ++c) set({r, c});
    }
  }
  return mask;
}

std::size_t PhantomGeometry::feature_count() const {
  const auto mask = feature_mask();
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

bool operator==(const PhantomGeometry& a, const PhantomGeometry& b) {
  auto line_eq = [](const Line& x, const Line& y) {
    return x.start.row == y.start.row && x.start.col == y.start.col && x.drow == y.drow && x.dcol == y.dcol &&
           x.length == y.length;
  };
  auto pixel_eq = [](Pixel x, Pixel y) { return x.row == y.row && x.col == y.col; };
  return a.height == b.height && a.width == b.width &&
         std::equal(a.lines.begin(), a.lines.end(), b.lines.begin(), b.lines.end(), line_eq) &&
         std::equal(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), pixel_eq) &&
         std::equal(a.blocks.begin(), a.blocks.end(), b.blocks.begin(), b.blocks.end(), rect_equal) &&
         a.background == b.background && a.contrast_line == b.contrast_line && a.edge_strip_a == b.edge_strip_a &&
         a.edge_strip_b == b.edge_strip_b;
}

PhantomGeometry default_geometry(int size) {
  if (size < 64) throw std::invalid_argument("default_geometry: size must be >= 64");
  auto s = [size](int v) { return v * size / 128; };
  PhantomGeometry g;
  g.height = size;
  g.width = size;
  g.lines = {
      Line{{s(64), s(8)}, 0, 1, s(112)},  // horizontal; used for line contrast
      Line{{s(70), s(64)}, 1, 0, s(54)},  // vertical
      Line{{s(8), s(8)}, 1, 1, s(40)},    // diagonal
  };
  for (int r : {76, 88, 100, 112}) {
    for (int c : {76, 88, 100, 112}) g.points.push_back({s(r), s(c)});
  }
  const Rect block{s(16), s(80), s(32), s(32)};
  g.blocks = {block};
  g.background = Rect{s(80), s(8), s(40), s(40)};
  g.contrast_line = 0;
  // Three-pixel bands either side of the block's left edge column.
  g.edge_strip_a = Rect{block.row, block.col - 3, block.height, 3};
  g.edge_strip_b = Rect{block.row, block.col + 1, block.height, 3};
  g.validate();
  return g;
}

PhantomGeometry read_geometry(std::istream& in) {
  PhantomGeometry g;
  bool have_size = false;
  bool have_background = false;
  bool have_contrast = false;
  int strips = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("geometry line " + std::to_string(lineno) + ": " + why);
    };
    auto read_rect = [&]() {
      Rect r;
      if (!(ls >> r.row >> r.col >> r.height >> r.width)) fail("expected <row> <col> <height> <width>");
      return r;
    };
    if (key == "size") {
      if (!(ls >> g.height >> g.width)) fail("expected <height> <width>");
      have_size = true;
    } else if (key == "line") {
      Line l;
      if (!(ls >> l.start.row >> l.start.col >> l.drow >> l.dcol >> l.length)) {
        fail("expected <row> <col> <drow> <dcol> <length>");
      }
      g.lines.push_back(l);
    } else if (key == "point") {
      Pixel p;
      if (!(ls >> p.row >> p.col)) fail("expected <row> <col>");
      g.points.push_back(p);
    } else if (key == "block") {
      g.blocks.push_back(read_rect());
    } else if (key == "background") {
      g.background = read_rect();
      have_background = true;
    } else if (key == "contrast_line") {
      if (!(ls >> g.contrast_line)) fail("expected <index>");
      have_contrast = true;
    } else if (key == "edge_strip") {
      if (strips >= 2) fail("more than two edge strips");
      (strips == 0 ? g.edge_strip_a : g.edge_strip_b) = read_rect();
      ++strips;
    } else {
      fail("unknown directive '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (!have_size || !have_background || !have_contrast || strips != 2) {
    throw std::invalid_argument("geometry: size, background, contrast_line and two edge_strip entries are required");
  }
  g.validate();
  return g;
}

PhantomGeometry read_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open geometry file " + path.string());
  return read_geometry(in);
}

void write_geometry(const PhantomGeometry& g, std::ostream& out) {
  auto rect = [&](const Rect& r) { out << r.row << ' ' << r.col << ' ' << r.height << ' ' << r.width << '\n'; };
  out << "# phantom geometry: rows/cols are 0-based, rectangles are <row> <col> <height> <width>\n";
  out << "size " << g.height << ' ' << g.width << '\n';
  for (const Line& l : g.lines) {
    out << "line " << l.start.row << ' ' << l.start.col << ' ' << l.drow << ' ' << l.dcol << ' ' << l.length << '\n';
  }
  for (Pixel p : g.points) out << "point " << p.row << ' ' << p.col << '\n';
  for (const Rect& b : g.blocks) {
    out << "block ";
    rect(b);
  }
  out << "background ";
  rect(g.background);
  out << "contrast_line " << g.contrast_line << '\n';
  out << "edge_strip ";
  rect(g.edge_strip_a);
  out << "edge_strip ";
  rect(g.edge_strip_b);
}

}  // namespace speckle
