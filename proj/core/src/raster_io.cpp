#include "speckle/raster_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace speckle {
namespace {

constexpr std::array<char, 4> kMagic = {'S', 'P', 'K', 'L'};
constexpr int kMaxSide = 1 << 20;

void put_u32_le(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xFFu), static_cast<char>((v >> 8) & 0xFFu),
                                 static_cast<char>((v >> 16) & 0xFFu),
                                 static_cast<char>((v >> 24) & 0xFFu)};
  out.write(b.data(), b.size());
}

std::uint32_t get_u32_le(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw FormatError("raw-f64-le: truncated header");
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void check_dims(long long w, long long h) {
  if (w <= 0 || h <= 0 || w > kMaxSide || h > kMaxSide) {
    throw FormatError("invalid raster dimensions in header");
  }
}

Raster make_checked(int w, int h, std::vector<double> data) {
  for (double v : data) {
    if (!std::isfinite(v)) throw FormatError("non-finite intensity");
    if (v < 0.0) throw FormatError("negative intensity");
  }
  return Raster(w, h, std::move(data));
}

Raster read_ascii(std::istream& in) {
  long long h = 0;
  long long w = 0;
  std::string header;
  if (!std::getline(in, header)) throw FormatError("ascii-matrix: missing header");
  std::istringstream hs(header);
  if (!(hs >> h >> w)) throw FormatError("ascii-matrix: header must be \"height width\"");
  std::string rest;
  if (hs >> rest) throw FormatError("ascii-matrix: trailing tokens in header");
  check_dims(w, h);

  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(w * h));
  std::string line;
  for (long long r = 0; r < h; ++r) {
    if (!std::getline(in, line)) throw FormatError("ascii-matrix: fewer rows than declared");
    const char* p = line.data();
    const char* end = line.data() + line.size();
    long long cols = 0;
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{}) throw FormatError("ascii-matrix: malformed number");
      data.push_back(v);
      p = next;
      ++cols;
    }
    if (cols != w) throw FormatError("ascii-matrix: row length does not match width");
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw FormatError("ascii-matrix: more rows than declared");
    }
  }
  return make_checked(static_cast<int>(w), static_cast<int>(h), std::move(data));
}

void write_ascii(const Raster& img, std::ostream& out) {
  out << img.height() << ' ' << img.width() << '\n';
  std::array<char, 64> buf{};
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), img.at(r, c));
      if (c > 0) out.put(' ');
      out.write(buf.data(), end - buf.data());
    }
    out.put('\n');
  }
}

Raster read_raw(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError("raw-f64-le: bad magic");
  }
  const std::uint32_t w = get_u32_le(in);
  const std::uint32_t h = get_u32_le(in);
  (void)get_u32_le(in);  // reserved
  check_dims(w, h);
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<double> data(n);
  std::vector<unsigned char> bytes(n * 8);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw FormatError("raw-f64-le: payload shorter than width x height");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("raw-f64-le: payload longer than width x height");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    for (int k = 7; k >= 0; --k) bits = (bits << 8) | bytes[i * 8 + static_cast<std::size_t>(k)];
    data[i] = std::bit_cast<double>(bits);
  }
  return make_checked(static_cast<int>(w), static_cast<int>(h), std::move(data));
}

void write_raw(const Raster& img, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u32_le(out, static_cast<std::uint32_t>(img.width()));
  put_u32_le(out, static_cast<std::uint32_t>(img.height()));
  put_u32_le(out, 0);
  std::vector<char> bytes(img.size() * 8);
  std::size_t i = 0;
  for (double v : img.values()) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k) {
      bytes[i++] = static_cast<char>(bits & 0xFFu);
      bits >>= 8;
    }
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Reads one PNM header token, skipping whitespace and '#' comments.
long long pnm_token(std::istream& in) {
  int ch = in.get();
  while (true) {
    if (ch == '#') {
      while (ch != '\n' && ch != std::char_traits<char>::eof()) ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  if (!std::isdigit(ch)) throw FormatError("pgm: malformed header");
  long long v = 0;
  while (std::isdigit(ch)) {
    v = v * 10 + (ch - '0');
    if (v > std::numeric_limits<int>::max()) throw FormatError("pgm: header value too large");
    ch = in.get();
  }
  // Exactly one whitespace byte separates the header from the payload.
  if (!std::isspace(ch)) throw FormatError("pgm: malformed header");
  return v;
}

Raster read_pgm(std::istream& in) {
  std::array<char, 2> magic{};
  if (!in.read(magic.data(), 2) || magic[0] != 'P' || magic[1] != '5') {
    throw FormatError("pgm: only binary P5 is supported");
  }
  const long long w = pnm_token(in);
  const long long h = pnm_token(in);
  const long long maxval = pnm_token(in);
  check_dims(w, h);
  if (maxval <= 0 || maxval > 65535) throw FormatError("pgm: maxval out of range");
  const std::size_t n = static_cast<std::size_t>(w * h);
  const std::size_t bpp = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> bytes(n * bpp);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw FormatError("pgm: truncated payload");
  }
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = bpp == 2 ? static_cast<double>((bytes[2 * i] << 8) | bytes[2 * i + 1])
                       : static_cast<double>(bytes[i]);
  }
  return make_checked(static_cast<int>(w), static_cast<int>(h), std::move(data));
}

void write_pgm(const Raster& img, std::ostream& out) {
  const auto [lo_it, hi_it] = std::minmax_element(img.values().begin(), img.values().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  out << "P5\n" << img.width() << ' ' << img.height() << "\n65535\n";
  std::vector<char> bytes(img.size() * 2);
  std::size_t i = 0;
  for (double v : img.values()) {
    const auto q = range > 0.0
                       ? static_cast<std::uint16_t>(std::lround((v - lo) / range * 65535.0))
                       : std::uint16_t{0};
    bytes[i++] = static_cast<char>(q >> 8);
    bytes[i++] = static_cast<char>(q & 0xFFu);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

std::optional<RasterFormat> parse_format(std::string_view name) {
  if (name == "ascii" || name == "ascii-matrix") return RasterFormat::AsciiMatrix;
  if (name == "raw" || name == "raw-f64-le") return RasterFormat::RawF64;
  if (name == "pgm" || name == "pgm16") return RasterFormat::Pgm16;
  return std::nullopt;
}

std::string_view format_name(RasterFormat f) {
  switch (f) {
    case RasterFormat::AsciiMatrix:
      return "ascii-matrix";
    case RasterFormat::RawF64:
      return "raw-f64-le";
    case RasterFormat::Pgm16:
      return "pgm16";
  }
  return "unknown";
}

std::optional<RasterFormat> format_from_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".txt" || ext == ".asc" || ext == ".mat") return RasterFormat::AsciiMatrix;
  if (ext == ".raw" || ext == ".f64") return RasterFormat::RawF64;
  if (ext == ".pgm") return RasterFormat::Pgm16;
  return std::nullopt;
}

Raster read_raster(std::istream& in, RasterFormat format) {
  switch (format) {
    case RasterFormat::AsciiMatrix:
      return read_ascii(in);
    case RasterFormat::RawF64:
      return read_raw(in);
    case RasterFormat::Pgm16:
      return read_pgm(in);
  }
  throw std::invalid_argument("unknown raster format");
}

void write_raster(const Raster& img, std::ostream& out, RasterFormat format) {
  if (img.empty()) throw std::invalid_argument("cannot write an empty raster");
  switch (format) {
    case RasterFormat::AsciiMatrix:
      write_ascii(img, out);
      return;
    case RasterFormat::RawF64:
      write_raw(img, out);
      return;
    case RasterFormat::Pgm16:
      write_pgm(img, out);
      return;
  }
}

Raster read_raster(const std::filesystem::path& path, RasterFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_raster(in, format);
}

void write_raster(const Raster& img, const std::filesystem::path& path, RasterFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_raster(img, out, format);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace speckle
