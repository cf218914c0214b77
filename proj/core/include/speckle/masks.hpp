#pragma once

#include <array>
#include <string>
#include <vector>

#include "speckle/image.hpp"

namespace speckle {

/// Region identifiers inside a Nagao-Matsuyama window. Region 1 is the central
/// block; 2..9 run clockwise from north.
enum class Region : int { Center = 1, N, NE, E, SE, S, SW, W, NW };

struct RegionMask {
  int region_id = 0;
  std::vector<Offset> offsets;
};

/// The nine pairwise-disjoint regions of a 5x5 or 7x7 window.
///
/// Window 5: central 3x3 block; the 16-pixel outer ring is split into eight
/// 2-pixel regions. Window 7: central 5x5 block; the 24-pixel ring is split into
/// eight 3-pixel regions (straight runs on the sides, L-shapes at the corners).
/// In both tables only N and NE are written by hand; E/S/W and SE/SW/NW are
/// their 90-degree clockwise rotations, (dr, dc) -> (dc, -dr).
///
/// Throws std::invalid_argument for any other window size.
[[nodiscard]] std::array<RegionMask, 9> nm_masks(int window);

/// 90-degree clockwise rotation of an offset about the window center.
[[nodiscard]] constexpr Offset rotate_cw(Offset o) noexcept { return Offset{o.dcol, -o.drow}; }

/// window x window grid of region ids, one text row per window row.
[[nodiscard]] std::string render_mask_table(int window);

}  // namespace speckle
