#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stegodoc/image.hpp"

namespace stegodoc {

/// Floyd-Steinberg error diffusion in plain raster order.
///
/// A pixel whose value plus accumulated error is >= 128 becomes white (1),
/// otherwise black (0). The quantization error is pushed to the unvisited
/// neighbours with weights 7/16 (right), 3/16 (below-left), 5/16 (below) and
/// 1/16 (below-right); error falling outside the image is dropped.
inline BitImage to_halftone(const GrayImage& doc) {
  if (doc.empty()) throw std::invalid_argument("to_halftone: empty image");
  const std::size_t rows = doc.rows();
  const std::size_t cols = doc.cols();

  // Two rolling rows of accumulated error, padded by one on each side.
  std::vector<double> cur(cols + 2, 0.0);
  std::vector<double> next(cols + 2, 0.0);

  BitImage out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = doc.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = src[c] + cur[c + 1];
      const bool white = v >= 128.0;
      dst[c] = white ? 1 : 0;
      const double err = v - (white ? 255.0 : 0.0);
      if (c + 1 < cols) cur[c + 2] += err * (7.0 / 16.0);
      if (r + 1 < rows) {
        if (c > 0) next[c] += err * (3.0 / 16.0);
        next[c + 1] += err * (5.0 / 16.0);
        if (c + 1 < cols) next[c + 2] += err * (1.0 / 16.0);
      }
    }
    cur.swap(next);
    std::fill(next.begin(), next.end(), 0.0);
  }
  return out;
}

/// Normalized 3x3 Gaussian sampled at offsets {-1,0,1}, row-major.
inline std::array<double, 9> gaussian_kernel_3x3(double sigma = 0.5) {
  std::array<double, 9> k{};
  double sum = 0.0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k[static_cast<std::size_t>((dy + 1) * 3 + dx + 1)] = w;
      sum += w;
    }
  }
  for (auto& w : k) w /= sum;
  return k;
}

/// Inverse halftone: 255 * (G * ht) with a 3x3 Gaussian (sigma 0.5),
/// replicated borders, rounded and clamped to [0,255].
inline GrayImage from_halftone(const BitImage& ht) {
  if (ht.empty()) throw std::invalid_argument("from_halftone: empty image");
  const auto k = gaussian_kernel_3x3(0.5);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(ht.rows());
  const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(ht.cols());
  auto clampi = [](std::ptrdiff_t v, std::ptrdiff_t hi) {
    return v < 0 ? 0 : (v >= hi ? hi - 1 : v);
  };

  GrayImage out(ht.rows(), ht.cols());
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
        const auto rr = static_cast<std::size_t>(clampi(r + dy, rows));
        for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
          const auto cc = static_cast<std::size_t>(clampi(c + dx, cols));
          acc += k[static_cast<std::size_t>((dy + 1) * 3 + dx + 1)] * ht(rr, cc);
        }
      }
      double v = std::round(255.0 * acc);
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
  }
  return out;
}

inline BitImage complement(const BitImage& b) {
  BitImage out = b;
  for (auto& v : out.pixels()) v = static_cast<std::uint8_t>(1u - v);
  return out;
}

}  // namespace stegodoc
