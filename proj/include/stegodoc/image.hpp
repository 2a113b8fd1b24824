#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace stegodoc {

struct GrayTag {};
struct BitTag {};

/// Dense row-major 8-bit raster. The tag keeps gray images and binary
/// images from being mixed up at call sites; both store one byte per pixel.
template <typename Tag>
class BasicImage {
 public:
  using value_type = std::uint8_t;

  BasicImage() = default;

  BasicImage(std::size_t rows, std::size_t cols, value_type fill = 0)
      : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("image dimensions must be positive");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  value_type& operator()(std::size_t r, std::size_t c) noexcept {
    return pixels_[r * cols_ + c];
  }
  value_type operator()(std::size_t r, std::size_t c) const noexcept {
    return pixels_[r * cols_ + c];
  }

  std::span<value_type> pixels() noexcept { return pixels_; }
  std::span<const value_type> pixels() const noexcept { return pixels_; }

  std::span<value_type> row(std::size_t r) noexcept {
    return {pixels_.data() + r * cols_, cols_};
  }
  std::span<const value_type> row(std::size_t r) const noexcept {
    return {pixels_.data() + r * cols_, cols_};
  }

  friend bool operator==(const BasicImage&, const BasicImage&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> pixels_;
};

/// 8-bit intensities in [0,255].
using GrayImage = BasicImage<GrayTag>;
/// Binary image; every element is 0 or 1. Halftone convention: 1 = white.
using BitImage = BasicImage<BitTag>;

/// Axis-aligned block: x = left column, y = top row.
struct Rect {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t w = 0;
  std::uint32_t h = 0;

  std::uint64_t area() const noexcept {
    return std::uint64_t{w} * std::uint64_t{h};
  }
  std::uint32_t right() const noexcept { return x + w; }
  std::uint32_t bottom() const noexcept { return y + h; }

  bool contains(std::size_t row, std::size_t col) const noexcept {
    return col >= x && col < right() && row >= y && row < bottom();
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Raster order: top row first, then left column.
inline bool raster_less(const Rect& a, const Rect& b) noexcept {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

template <typename Tag>
BasicImage<Tag> crop(const BasicImage<Tag>& img, const Rect& r) {
  if (r.w == 0 || r.h == 0 || r.right() > img.cols() ||
      r.bottom() > img.rows()) {
    throw std::out_of_range("crop rectangle outside image");
  }
  BasicImage<Tag> out(r.h, r.w);
  for (std::size_t i = 0; i < r.h; ++i) {
    auto src = img.row(r.y + i).subspan(r.x, r.w);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

inline std::size_t count_ones(const BitImage& img) noexcept {
  std::size_t n = 0;
  for (auto v : img.pixels()) n += v;
  return n;
}

}  // namespace stegodoc
