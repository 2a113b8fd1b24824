#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stegodoc/image.hpp"

namespace stegodoc {

/// Largest value a block coordinate or extent may take in the payload header.
inline constexpr std::uint32_t kMaxRectField = 4095;

struct Decomposition {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rect> leaves;
};

/// Which adjacency pass runs first when merging content blocks.
enum class MergeOrder { VerticalFirst, HorizontalFirst };

namespace detail {

template <typename Tag>
int intensity_range(const BasicImage<Tag>& img, const Rect& r) {
  std::uint8_t lo = 255;
  std::uint8_t hi = 0;
  for (std::size_t i = r.y; i < r.bottom(); ++i) {
    auto line = img.row(i).subspan(r.x, r.w);
    auto [mn, mx] = std::minmax_element(line.begin(), line.end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
    if (hi - lo >= 255) break;
  }
  return int{hi} - int{lo};
}

inline std::uint64_t key_of(std::uint32_t x, std::uint32_t y) {
  return (std::uint64_t{x} << 32) | y;
}

// One scan of the merge: the front block absorbs its neighbour for as long as
// one exists, then moves to the output. `vertical` picks the adjacency test.
inline std::vector<Rect> merge_pass(const std::vector<Rect>& in, bool vertical) {
  std::unordered_map<std::uint64_t, std::size_t> by_corner;
  by_corner.reserve(in.size() * 2);
  for (std::size_t i = 0; i < in.size(); ++i) by_corner.emplace(key_of(in[i].x, in[i].y), i);

  std::vector<bool> gone(in.size(), false);
  std::vector<Rect> out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (gone[i]) continue;
    Rect cur = in[i];
    by_corner.erase(key_of(cur.x, cur.y));
    for (;;) {
      const auto it = vertical ? by_corner.find(key_of(cur.x, cur.bottom()))
                               : by_corner.find(key_of(cur.right(), cur.y));
      if (it == by_corner.end()) break;
      const Rect& b = in[it->second];
      if (vertical) {
        if (b.w != cur.w || cur.h + b.h > kMaxRectField) break;
        cur.h += b.h;
      } else {
        if (b.h != cur.h || cur.w + b.w > kMaxRectField) break;
        cur.w += b.w;
      }
      gone[it->second] = true;
      by_corner.erase(it);
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace detail

/// Rectangular quadtree. A block is split into four floor-half quadrants while
/// min(w,h) > 2*min_length and max - min over the block is >= threshold.
/// Leaves come out in depth-first order, quadrants visited top-left,
/// top-right, bottom-left, bottom-right.
template <typename Tag>
Decomposition r_quadtree(const BasicImage<Tag>& img, std::size_t min_length, int threshold) {
  if (img.empty()) throw std::invalid_argument("r_quadtree: empty image");
  if (min_length < 1) throw std::invalid_argument("r_quadtree: min_length must be >= 1");
  if (threshold < 1) throw std::invalid_argument("r_quadtree: threshold must be >= 1");

  Decomposition d{img.rows(), img.cols(), {}};
  std::vector<Rect> stack{Rect{0, 0, static_cast<std::uint32_t>(img.cols()),
                               static_cast<std::uint32_t>(img.rows())}};
  while (!stack.empty()) {
    Rect b = stack.back();
    stack.pop_back();
    const bool splittable = std::min(b.w, b.h) > 2 * min_length &&
                            detail::intensity_range(img, b) >= threshold;
    if (!splittable) {
      d.leaves.push_back(b);
      continue;
    }
    const std::uint32_t half_w = b.w / 2;
    const std::uint32_t half_h = b.h / 2;
    // Pushed in reverse so the top-left quadrant is processed first.
    stack.push_back({b.x + half_w, b.y + half_h, b.w - half_w, b.h - half_h});
    stack.push_back({b.x, b.y + half_h, half_w, b.h - half_h});
    stack.push_back({b.x + half_w, b.y, b.w - half_w, half_h});
    stack.push_back({b.x, b.y, half_w, half_h});
  }
  return d;
}

inline std::size_t ones_in(const BitImage& img, const Rect& r) {
  std::size_t n = 0;
  for (std::size_t i = r.y; i < r.bottom(); ++i) {
    for (auto v : img.row(i).subspan(r.x, r.w)) n += v;
  }
  return n;
}

/// Leaves holding at least one set bit, in raster order.
inline std::vector<Rect> content_rects(const BitImage& img, const Decomposition& d) {
  std::vector<Rect> out;
  for (const auto& r : d.leaves) {
    if (ones_in(img, r) > 0) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), raster_less);
  return out;
}

/// Merges adjacent blocks: a vertical pass joins blocks sharing x and w that
/// touch top-to-bottom, a horizontal pass joins blocks sharing y and h that
/// touch left-to-right. The two passes repeat until nothing changes, so the
/// result is stable under another call. A merge that would push w or h past
/// 4095 is skipped. Output is in raster order.
inline std::vector<Rect> merge_rects(std::vector<Rect> rects,
                                     MergeOrder order = MergeOrder::VerticalFirst) {
  const bool vertical_first = order == MergeOrder::VerticalFirst;
  for (;;) {
    const std::size_t before = rects.size();
    rects = detail::merge_pass(rects, vertical_first);
    rects = detail::merge_pass(rects, !vertical_first);
    if (rects.size() == before) break;
  }
  std::sort(rects.begin(), rects.end(), raster_less);
  return rects;
}

/// Blocks that cannot be written to the payload header as they stand.
inline std::vector<Rect> oversized_rects(const std::vector<Rect>& rects) {
  std::vector<Rect> out;
  for (const auto& r : rects) {
    if (r.w > kMaxRectField || r.h > kMaxRectField) out.push_back(r);
  }
  return out;
}

/// Cuts any block wider or taller than 4095 into pieces that fit the header.
inline std::vector<Rect> split_oversized(const std::vector<Rect>& rects) {
  std::vector<Rect> out;
  for (const auto& r : rects) {
    for (std::uint32_t dy = 0; dy < r.h; dy += kMaxRectField) {
      for (std::uint32_t dx = 0; dx < r.w; dx += kMaxRectField) {
        out.push_back({r.x + dx, r.y + dy, std::min(kMaxRectField, r.w - dx),
                       std::min(kMaxRectField, r.h - dy)});
      }
    }
  }
  std::sort(out.begin(), out.end(), raster_less);
  return out;
}

}  // namespace stegodoc
