#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "stegodoc/image.hpp"

namespace stegodoc {

struct QualityReport {
  double psnr_db = 0.0;
  std::optional<double> ssim;
  double embedding_rate_bpp = 0.0;
  double physical_rate_bpp = 0.0;
};

namespace detail {

inline void require_same_dims(const GrayImage& a, const GrayImage& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("image dimensions differ");
  }
  if (a.empty()) throw std::invalid_argument("empty image");
}

}  // namespace detail

inline double mse(const GrayImage& a, const GrayImage& b) {
  detail::require_same_dims(a, b);
  auto pa = a.pixels();
  auto pb = b.pixels();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = int{pa[i]} - int{pb[i]};
    acc += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(acc) / static_cast<double>(pa.size());
}

/// 10 log10(max(a)^2 / MSE). The peak is taken from the first image rather
/// than fixed at 255, so psnr(a,b) and psnr(b,a) can differ. Identical
/// images give +infinity.
inline double psnr(const GrayImage& a, const GrayImage& b) {
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  auto pa = a.pixels();
  const double peak = *std::max_element(pa.begin(), pa.end());
  return 10.0 * std::log10(peak * peak / err);
}

/// Whole-image SSIM as the product of correlation, luminance and contrast
/// terms, with no stabilising constants. Sample statistics (divisor N-1).
/// Empty result when either image is constant, since the terms are then
/// undefined.
inline std::optional<double> ssim_global(const GrayImage& a, const GrayImage& b) {
  detail::require_same_dims(a, b);
  auto pa = a.pixels();
  auto pb = b.pixels();
  const double n = static_cast<double>(pa.size());
  if (pa.size() < 2) return std::nullopt;

  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    mean_a += pa[i];
    mean_b += pb[i];
  }
  mean_a /= n;
  mean_b /= n;

  double var_a = 0.0;
  double var_b = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double da = pa[i] - mean_a;
    const double db = pb[i] - mean_b;
    var_a += da * da;
    var_b += db * db;
    cov += da * db;
  }
  var_a /= n - 1.0;
  var_b /= n - 1.0;
  cov /= n - 1.0;
  if (var_a == 0.0 || var_b == 0.0) return std::nullopt;

  const double sd_a = std::sqrt(var_a);
  const double sd_b = std::sqrt(var_b);
  const double correlation = cov / (sd_a * sd_b);
  const double luminance = 2.0 * mean_a * mean_b / (mean_a * mean_a + mean_b * mean_b);
  const double contrast = 2.0 * sd_a * sd_b / (var_a + var_b);
  return correlation * luminance * contrast;
}

struct Rates {
  double embedding_rate_bpp = 0.0;
  double physical_rate_bpp = 0.0;
};

/// Embedding rate counts uncompressed document pixels per host pixel; the
/// physical rate counts the 12-bit words actually written.
inline Rates rates(std::size_t host_rows, std::size_t host_cols, std::size_t doc_rows,
                   std::size_t doc_cols, std::size_t words) {
  if (host_rows == 0 || host_cols == 0) throw std::invalid_argument("rates: empty host");
  const double host_px = static_cast<double>(host_rows) * static_cast<double>(host_cols);
  return {static_cast<double>(doc_rows) * static_cast<double>(doc_cols) / host_px,
          12.0 * static_cast<double>(words) / host_px};
}

}  // namespace stegodoc
