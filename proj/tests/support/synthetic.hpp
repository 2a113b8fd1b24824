#pragma once

// Deterministic generators for test documents and host images.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "stegodoc/image.hpp"

namespace stegodoc::fixture {

struct PageStyle {
  std::size_t margin = 90;
  std::size_t line_pitch = 26;   // baseline to baseline
  std::size_t glyph_h = 13;
  std::size_t glyph_w = 8;
  std::size_t glyph_gap = 2;
  std::size_t stroke = 2;
  double word_break = 0.17;      // chance a glyph slot is a space
  double line_fill = 0.85;       // mean fraction of the text column a line uses
  double paragraph_break = 0.08; // chance a line is left blank
  double blur_sigma = 0.6;       // scanner softening; 0 keeps pure black/white
};

namespace detail {

inline void fill_rect(std::vector<double>& ink, std::size_t cols, std::size_t r0, std::size_t c0,
                      std::size_t h, std::size_t w) {
  for (std::size_t r = r0; r < r0 + h; ++r) {
    for (std::size_t c = c0; c < c0 + w; ++c) ink[r * cols + c] = 1.0;
  }
}

// A glyph is a handful of strokes on a small grid: stems, bars and a bowl.
inline void draw_glyph(std::vector<double>& ink, std::size_t cols, std::size_t top,
                       std::size_t left, const PageStyle& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 7);
  const std::size_t h = s.glyph_h;
  const std::size_t w = s.glyph_w;
  const std::size_t t = s.stroke;
  int shape = pick(rng);
  // Ascender / x-height variation.
  std::size_t body_top = (shape % 3 == 0) ? top : top + h / 3;
  std::size_t body_h = top + h - body_top;
  switch (shape) {
    case 0:  // l-like stem
      fill_rect(ink, cols, body_top, left + w / 2 - t / 2, body_h, t);
      break;
    case 1:  // n-like
      fill_rect(ink, cols, body_top, left, body_h, t);
      fill_rect(ink, cols, body_top, left, t, w);
      fill_rect(ink, cols, body_top, left + w - t, body_h, t);
      break;
    case 2:  // o-like
      fill_rect(ink, cols, body_top, left, body_h, t);
      fill_rect(ink, cols, body_top, left + w - t, body_h, t);
      fill_rect(ink, cols, body_top, left, t, w);
      fill_rect(ink, cols, top + h - t, left, t, w);
      break;
    case 3:  // h-like
      fill_rect(ink, cols, body_top, left, body_h, t);
      fill_rect(ink, cols, top + h / 2, left, t, w);
      fill_rect(ink, cols, top + h / 2, left + w - t, h - h / 2, t);
      break;
    case 4:  // e-like
      fill_rect(ink, cols, body_top, left, body_h, t);
      fill_rect(ink, cols, body_top, left, t, w);
      fill_rect(ink, cols, body_top + body_h / 2, left, t, w);
      fill_rect(ink, cols, top + h - t, left, t, w);
      break;
    case 5:  // v-like diagonal pair
      for (std::size_t r = 0; r < body_h; ++r) {
        std::size_t off = r * (w / 2) / std::max<std::size_t>(body_h, 1);
        fill_rect(ink, cols, body_top + r, left + off, 1, t);
        fill_rect(ink, cols, body_top + r, left + w - t - off, 1, t);
      }
      break;
    case 6:  // t-like
      fill_rect(ink, cols, body_top, left + w / 2 - t / 2, body_h, t);
      fill_rect(ink, cols, top + h / 3, left, t, w);
      break;
    default:  // r-like
      fill_rect(ink, cols, body_top, left, body_h, t);
      fill_rect(ink, cols, body_top, left, t, w - 1);
      break;
  }
}

inline std::vector<double> gaussian_taps(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (auto& v : taps) v /= sum;
  return taps;
}

inline void separable_blur(std::vector<double>& img, std::size_t rows, std::size_t cols,
                           double sigma) {
  const auto taps = gaussian_taps(sigma);
  const auto radius = static_cast<std::ptrdiff_t>(taps.size() / 2);
  std::vector<double> tmp(img.size(), 0.0);
  auto at = [](std::ptrdiff_t v, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(v, 0, static_cast<std::ptrdiff_t>(n) - 1));
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += taps[static_cast<std::size_t>(k + radius)] *
               img[r * cols + at(static_cast<std::ptrdiff_t>(c) + k, cols)];
      }
      tmp[r * cols + c] = acc;
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += taps[static_cast<std::size_t>(k + radius)] *
               tmp[at(static_cast<std::ptrdiff_t>(r) + k, rows) * cols + c];
      }
      img[r * cols + c] = acc;
    }
  }
}

}  // namespace detail

/// A gray page of text-like glyph lines on a pure white background.
inline GrayImage synthetic_page(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                const PageStyle& style = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> ink(rows * cols, 0.0);

  const std::size_t margin = std::min(style.margin, std::min(rows, cols) / 6);
  const std::size_t cell = style.glyph_w + style.glyph_gap;
  if (cols > 2 * margin + cell && rows > 2 * margin + style.glyph_h) {
    const std::size_t usable = cols - 2 * margin;
    for (std::size_t top = margin; top + style.glyph_h + margin <= rows; top += style.line_pitch) {
      if (unit(rng) < style.paragraph_break) continue;
      const double fill = std::clamp(style.line_fill + 0.15 * (unit(rng) - 0.5), 0.1, 1.0);
      const std::size_t slots = static_cast<std::size_t>(fill * static_cast<double>(usable / cell));
      for (std::size_t k = 0; k < slots; ++k) {
        if (unit(rng) < style.word_break) continue;
        detail::draw_glyph(ink, cols, top, margin + k * cell, style, rng);
      }
    }
  }
  if (style.blur_sigma > 0.0) detail::separable_blur(ink, rows, cols, style.blur_sigma);

  GrayImage page(rows, cols, 255);
  auto px = page.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double v = 255.0 * (1.0 - std::clamp(ink[i], 0.0, 1.0));
    px[i] = static_cast<std::uint8_t>(std::lround(v));
  }
  return page;
}

/// Random binary image with roughly `density` ones, clustered into blobs so
/// quadtrees get both uniform and mixed regions.
inline BitImage random_bits(std::size_t rows, std::size_t cols, double density,
                            std::mt19937_64& rng) {
  BitImage img(rows, cols, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> rr(0, rows - 1);
  std::uniform_int_distribution<std::size_t> cc(0, cols - 1);
  const std::size_t blobs = 1 + static_cast<std::size_t>(unit(rng) * 6);
  for (std::size_t b = 0; b < blobs; ++b) {
    const std::size_t r0 = rr(rng);
    const std::size_t c0 = cc(rng);
    const std::size_t h = 1 + static_cast<std::size_t>(unit(rng) * static_cast<double>(rows) / 3);
    const std::size_t w = 1 + static_cast<std::size_t>(unit(rng) * static_cast<double>(cols) / 3);
    for (std::size_t r = r0; r < std::min(rows, r0 + h); ++r) {
      for (std::size_t c = c0; c < std::min(cols, c0 + w); ++c) {
        img(r, c) = unit(rng) < density ? 1 : 0;
      }
    }
  }
  return img;
}

/// Smooth gradients plus noise: a stand-in for a natural photograph.
inline GrayImage textured_host(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                               double noise = 24.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, noise);
  const double fx = 0.01 + 0.05 * unit(rng);
  const double fy = 0.01 + 0.05 * unit(rng);
  const double phase = 6.28318 * unit(rng);
  GrayImage img(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 128.0 + 70.0 * std::sin(fx * static_cast<double>(c) + phase) *
                             std::cos(fy * static_cast<double>(r)) +
                 gauss(rng);
      img(r, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return img;
}

}  // namespace stegodoc::fixture
