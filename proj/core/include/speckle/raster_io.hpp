#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "speckle/image.hpp"

namespace speckle {

/// On-disk raster encodings.
///
/// - `AsciiMatrix`: first line "height width", then one line of decimals per row.
///   Values are written in shortest round-trip form, so write/read is lossless.
/// - `RawF64`: 16-byte header ("SPKL", u32 width, u32 height, u32 reserved = 0),
///   followed by width*height little-endian IEEE-754 doubles in row-major order.
/// - `Pgm16`: binary P5 with maxval 65535. Writing linearly maps [min, max] onto
///   0..65535 (a constant image maps to 0); for viewing only.
enum class RasterFormat { AsciiMatrix, RawF64, Pgm16 };

[[nodiscard]] std::optional<RasterFormat> parse_format(std::string_view name);
[[nodiscard]] std::string_view format_name(RasterFormat f);
/// Guess from extension: .txt/.asc/.mat → ascii, .raw/.f64 → raw, .pgm → pgm16.
[[nodiscard]] std::optional<RasterFormat> format_from_extension(const std::filesystem::path& path);

[[nodiscard]] Raster read_raster(std::istream& in, RasterFormat format);
void write_raster(const Raster& img, std::ostream& out, RasterFormat format);

[[nodiscard]] Raster read_raster(const std::filesystem::path& path, RasterFormat format);
void write_raster(const Raster& img, const std::filesystem::path& path, RasterFormat format);

}  // namespace speckle
