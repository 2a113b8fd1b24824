#pragma once

// Binary netpbm I/O: PGM (P5, maxval <= 255) for gray images and PBM (P4)
// for bit images. PBM stores 1 = black, so a set PBM bit maps to BitImage 0
// and white halftone pixels (1) are written as clear bits.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stegodoc/error.hpp"
#include "stegodoc/image.hpp"

namespace stegodoc::netpbm {

namespace detail {

inline void skip_space_and_comments(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

inline std::size_t read_header_number(std::istream& in) {
  skip_space_and_comments(in);
  std::size_t value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    any = true;
    if (value > (std::size_t{1} << 30)) throw FormatError("netpbm: header value too large");
  }
  if (!any) throw FormatError("netpbm: expected a number in header");
  return value;
}

inline std::string read_magic(std::istream& in) {
  char m[2] = {0, 0};
  in.read(m, 2);
  if (!in) throw FormatError("netpbm: missing magic number");
  return std::string(m, 2);
}

// Exactly one whitespace byte separates the header from the raster.
inline void consume_raster_separator(std::istream& in) {
  int c = in.get();
  if (c == EOF || !std::isspace(c)) throw FormatError("netpbm: malformed header");
}

}  // namespace detail

inline GrayImage read_pgm(std::istream& in) {
  if (detail::read_magic(in) != "P5") throw FormatError("not a binary PGM (P5) file");
  std::size_t cols = detail::read_header_number(in);
  std::size_t rows = detail::read_header_number(in);
  std::size_t maxval = detail::read_header_number(in);
  if (rows == 0 || cols == 0) throw FormatError("PGM: zero dimension");
  if (maxval == 0 || maxval > 255) throw FormatError("PGM: only 8-bit maxval is supported");
  detail::consume_raster_separator(in);

  GrayImage img(rows, cols);
  auto px = img.pixels();
  in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (in.gcount() != static_cast<std::streamsize>(px.size())) {
    throw FormatError("PGM: truncated raster");
  }
  if (maxval != 255) {
    for (auto& v : px) {
      if (v > maxval) throw FormatError("PGM: sample exceeds maxval");
      v = static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
    }
  }
  return img;
}

inline void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  auto px = img.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

inline BitImage read_pbm(std::istream& in) {
  if (detail::read_magic(in) != "P4") throw FormatError("not a binary PBM (P4) file");
  std::size_t cols = detail::read_header_number(in);
  std::size_t rows = detail::read_header_number(in);
  if (rows == 0 || cols == 0) throw FormatError("PBM: zero dimension");
  detail::consume_raster_separator(in);

  const std::size_t stride = (cols + 7) / 8;
  std::vector<unsigned char> line(stride);
  BitImage img(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    in.read(reinterpret_cast<char*>(line.data()), static_cast<std::streamsize>(stride));
    if (in.gcount() != static_cast<std::streamsize>(stride)) throw FormatError("PBM: truncated raster");
    auto dst = img.row(r);
    for (std::size_t c = 0; c < cols; ++c) {
      bool black = (line[c / 8] >> (7 - c % 8)) & 1u;
      dst[c] = black ? 0 : 1;
    }
  }
  return img;
}

inline void write_pbm(std::ostream& out, const BitImage& img) {
  out << "P4\n" << img.cols() << ' ' << img.rows() << '\n';
  const std::size_t stride = (img.cols() + 7) / 8;
  std::vector<unsigned char> line(stride);
  for (std::size_t r = 0; r < img.rows(); ++r) {
    std::fill(line.begin(), line.end(), 0);
    auto src = img.row(r);
    for (std::size_t c = 0; c < img.cols(); ++c) {
      if (src[c] == 0) line[c / 8] |= static_cast<unsigned char>(0x80u >> (c % 8));
    }
    out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(stride));
  }
}

inline GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_pgm(in);
}

inline BitImage load_pbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_pbm(in);
}

inline void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write_pgm(out, img);
  if (!out) throw FormatError("write failed: " + path.string());
}

inline void save_pbm(const std::filesystem::path& path, const BitImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write_pbm(out, img);
  if (!out) throw FormatError("write failed: " + path.string());
}

}  // namespace stegodoc::netpbm
