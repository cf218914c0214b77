#include "speckle/masks.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>

namespace speckle {
namespace {

// Hand-authored seeds. Every other peripheral region is a rotation of one of these.
constexpr std::array<Offset, 2> kNorth5 = {{{-2, -1}, {-2, 0}}};
constexpr std::array<Offset, 2> kNorthEast5 = {{{-2, 1}, {-2, 2}}};
constexpr std::array<Offset, 3> kNorth7 = {{{-3, -1}, {-3, 0}, {-3, 1}}};
constexpr std::array<Offset, 3> kNorthEast7 = {{{-3, 2}, {-3, 3}, {-2, 3}}};

template <std::size_t K>
constexpr std::array<Offset, K> rotate_all(std::array<Offset, K> offs, int quarter_turns) {
  for (int q = 0; q < quarter_turns; ++q) {
    for (auto& o : offs) o = rotate_cw(o);
  }
  return offs;
}

// Region id of every cell in a window, 0 where unassigned, -1 on overlap or
// out-of-window offsets.
template <std::size_t K>
constexpr std::array<int, 49> label_cells(int window, const std::array<Offset, K>& north,
                                          const std::array<Offset, K>& north_east) {
  std::array<int, 49> cells{};
  const int half = window / 2;
  bool ok = true;
  auto mark = [&](Offset o, int id) {
    if (o.drow < -half || o.drow > half || o.dcol < -half || o.dcol > half) {
      ok = false;
      return;
    }
    int& cell = cells[static_cast<std::size_t>((o.drow + half) * window + (o.dcol + half))];
    if (cell != 0) ok = false;
    cell = id;
  };
  for (int r = -(half - 1); r <= half - 1; ++r) {
    for (int c = -(half - 1); c <= half - 1; ++c) mark({r, c}, 1);
  }
  for (int q = 0; q < 4; ++q) {
    for (Offset o : rotate_all(north, q)) mark(o, 2 + 2 * q);
    for (Offset o : rotate_all(north_east, q)) mark(o, 3 + 2 * q);
  }
  if (!ok) cells[0] = -1;
  return cells;
}

constexpr bool is_partition(int window, const std::array<int, 49>& cells) {
  if (cells[0] < 0) return false;
  for (int i = 0; i < window * window; ++i) {
    if (cells[static_cast<std::size_t>(i)] < 1 || cells[static_cast<std::size_t>(i)] > 9) return false;
  }
  return true;
}

constexpr auto kCells5 = label_cells(5, kNorth5, kNorthEast5);
constexpr auto kCells7 = label_cells(7, kNorth7, kNorthEast7);
static_assert(is_partition(5, kCells5), "5x5 regions must be disjoint and cover the window");
static_assert(is_partition(7, kCells7), "7x7 regions must be disjoint and cover the window");

template <std::size_t K>
std::array<RegionMask, 9> build(int window, const std::array<Offset, K>& north,
                                const std::array<Offset, K>& north_east) {
  std::array<RegionMask, 9> masks;
  const int half = window / 2;
  masks[0].region_id = 1;
  for (int r = -(half - 1); r <= half - 1; ++r) {
    for (int c = -(half - 1); c <= half - 1; ++c) masks[0].offsets.push_back({r, c});
  }
  for (int q = 0; q < 4; ++q) {
    const auto n = rotate_all(north, q);
    const auto ne = rotate_all(north_east, q);
    masks[static_cast<std::size_t>(1 + 2 * q)] = RegionMask{2 + 2 * q, {n.begin(), n.end()}};
    masks[static_cast<std::size_t>(2 + 2 * q)] = RegionMask{3 + 2 * q, {ne.begin(), ne.end()}};
  }
  return masks;
}

}  // namespace

std::array<RegionMask, 9> nm_masks(int window) {
  if (window == 5) return build(5, kNorth5, kNorthEast5);
  if (window == 7) return build(7, kNorth7, kNorthEast7);
  throw std::invalid_argument("Nagao-Matsuyama window must be 5 or 7");
}

std::string render_mask_table(int window) {
  const auto masks = nm_masks(window);
  const int half = window / 2;
  std::vector<int> grid(static_cast<std::size_t>(window * window), 0);
  for (const auto& m : masks) {
    for (Offset o : m.offsets) {
      grid[static_cast<std::size_t>((o.drow + half) * window + (o.dcol + half))] = m.region_id;
    }
  }
  std::ostringstream out;
  for (int r = 0; r < window; ++r) {
    for (int c = 0; c < window; ++c) {
      if (c > 0) out << ' ';
      out << grid[static_cast<std::size_t>(r * window + c)];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace speckle
