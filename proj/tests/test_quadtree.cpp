#include <gtest/gtest.h>

#include <random>

#include "stegodoc/halftone.hpp"
#include "stegodoc/quadtree.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace stegodoc;
using stegodoc::fixture::as_set;
using stegodoc::fixture::coverage;

namespace {

void expect_partition(const Decomposition& d) {
  std::uint64_t area = 0;
  for (const auto& r : d.leaves) area += r.area();
  EXPECT_EQ(area, d.rows * d.cols);
  for (int c : coverage(d.rows, d.cols, d.leaves)) ASSERT_EQ(c, 1);
}

}  // namespace

TEST(RQuadtree, UniformImageIsOneLeaf) {
  for (auto [rows, cols] : {std::pair{1u, 1u}, {64u, 64u}, {37u, 101u}}) {
    Decomposition d = r_quadtree(BitImage(rows, cols, 0), 1, 1);
    ASSERT_EQ(d.leaves.size(), 1u);
    EXPECT_EQ(d.leaves[0], (Rect{0, 0, cols, rows}));
  }
}

TEST(RQuadtree, SingleBitInEightByEight) {
  BitImage img(8, 8, 0);
  img(0, 0) = 1;
  Decomposition d = r_quadtree(img, 1, 1);
  // 8x8 splits into 4x4s; only the top-left 4x4 is mixed and splits again
  // into 2x2s, which stop because min(w,h) = 2 is not > 2.
  const std::set<stegodoc::fixture::RectTuple> expected{
      {0, 0, 2, 2}, {2, 0, 2, 2}, {0, 2, 2, 2}, {2, 2, 2, 2},
      {4, 0, 4, 4}, {0, 4, 4, 4}, {4, 4, 4, 4}};
  EXPECT_EQ(as_set(d.leaves), expected);
  EXPECT_EQ(as_set(d.leaves), stegodoc::fixture::quadtree_worklist(img, 1));
  expect_partition(d);

  auto content = content_rects(img, d);
  ASSERT_EQ(content.size(), 1u);
  EXPECT_EQ(content[0], (Rect{0, 0, 2, 2}));
}

TEST(RQuadtree, SplitUsesFloorHalves) {
  // 7x5 image, mixed, min_length 1: min(7,5) = 5 > 2 so it splits once at
  // floor(7/2) = 3 columns and floor(5/2) = 2 rows.
  BitImage img(5, 7, 0);
  img(4, 6) = 1;
  img(0, 0) = 1;
  Decomposition d = r_quadtree(img, 2, 1);
  const std::set<stegodoc::fixture::RectTuple> expected{
      {0, 0, 3, 2}, {3, 0, 4, 2}, {0, 2, 3, 3}, {3, 2, 4, 3}};
  EXPECT_EQ(as_set(d.leaves), expected);
}

TEST(RQuadtree, MatchesWorklistOracleOnPage) {
  GrayImage page = fixture::synthetic_page(512, 512, 21);
  BitImage msg = complement(to_halftone(page));
  Decomposition d = r_quadtree(msg, 4, 1);
  auto oracle = stegodoc::fixture::quadtree_worklist(msg, 4);
  EXPECT_EQ(d.leaves.size(), oracle.size());
  EXPECT_EQ(as_set(d.leaves), oracle);
  expect_partition(d);

  auto content = content_rects(msg, d);
  std::size_t oracle_content = 0;
  for (const auto& [x, y, w, h] : oracle) {
    if (ones_in(msg, Rect{x, y, w, h}) > 0) ++oracle_content;
  }
  EXPECT_EQ(content.size(), oracle_content);
  EXPECT_GT(content.size(), 10u);
  EXPECT_LT(content.size(), d.leaves.size());
}

TEST(RQuadtree, RandomRectangularImages) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 90;
    const std::size_t cols = 1 + rng() % 90;
    const std::size_t min_len = 1 + rng() % 6;
    BitImage img = fixture::random_bits(rows, cols, 0.3, rng);
    Decomposition d = r_quadtree(img, min_len, 1);
    expect_partition(d);
    EXPECT_EQ(as_set(d.leaves), stegodoc::fixture::quadtree_worklist(img, min_len));
    for (const auto& leaf : d.leaves) {
      const std::size_t ones = ones_in(img, leaf);
      const bool mixed = ones > 0 && ones < leaf.area();
      EXPECT_FALSE(std::min(leaf.w, leaf.h) > 2 * min_len && mixed);
      // Re-running on the leaf alone stops immediately.
      EXPECT_EQ(r_quadtree(crop(img, leaf), min_len, 1).leaves.size(), 1u);
    }
  }
}

TEST(RQuadtree, GrayImagesUseThreshold) {
  GrayImage img(16, 16, 100);
  img(3, 3) = 104;
  EXPECT_EQ(r_quadtree(img, 1, 5).leaves.size(), 1u);   // range 4 < 5
  EXPECT_GT(r_quadtree(img, 1, 4).leaves.size(), 1u);   // range 4 >= 4
}

TEST(RQuadtree, RejectsBadArguments) {
  EXPECT_THROW(r_quadtree(BitImage{}, 1, 1), std::invalid_argument);
  EXPECT_THROW(r_quadtree(BitImage(4, 4), 0, 1), std::invalid_argument);
  EXPECT_THROW(r_quadtree(BitImage(4, 4), 1, 0), std::invalid_argument);
}

TEST(ContentRects, EmptyAndFull) {
  BitImage zeros(20, 30, 0);
  EXPECT_TRUE(content_rects(zeros, r_quadtree(zeros, 2, 1)).empty());
  BitImage ones(20, 30, 1);
  auto content = content_rects(ones, r_quadtree(ones, 30, 1));
  ASSERT_EQ(content.size(), 1u);
  EXPECT_EQ(content[0], (Rect{0, 0, 30, 20}));
}

TEST(ContentRects, RasterOrderAndEveryOneCovered) {
  std::mt19937_64 rng(23);
  BitImage img = fixture::random_bits(70, 90, 0.05, rng);
  auto content = content_rects(img, r_quadtree(img, 2, 1));
  EXPECT_TRUE(std::is_sorted(content.begin(), content.end(), raster_less));
  auto cov = coverage(img.rows(), img.cols(), content);
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (img.pixels()[i]) {
      EXPECT_EQ(cov[i], 1);
    }
  }
}

TEST(MergeRects, VerticalPair) {
  auto out = merge_rects({{0, 0, 4, 4}, {0, 4, 4, 4}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (Rect{0, 0, 4, 8}));
}

TEST(MergeRects, HorizontalPair) {
  auto out = merge_rects({{0, 0, 4, 8}, {4, 0, 4, 8}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (Rect{0, 0, 8, 8}));
}

TEST(MergeRects, NonAdjacentUnchanged) {
  std::vector<Rect> in{{0, 0, 4, 4}, {8, 8, 4, 4}};
  EXPECT_EQ(merge_rects(in), in);
}

TEST(MergeRects, HorizontalNeedsEqualHeight) {
  std::vector<Rect> in{{0, 0, 4, 4}, {4, 0, 4, 8}};
  EXPECT_EQ(merge_rects(in), in);
}

TEST(MergeRects, PassOrderMatters) {
  // Vertical first: A+C stack, B stays. Horizontal first: A+B join, C stays.
  std::vector<Rect> in{{0, 0, 4, 4}, {4, 0, 4, 4}, {0, 4, 4, 4}};
  EXPECT_EQ(merge_rects(in, MergeOrder::VerticalFirst),
            (std::vector<Rect>{{0, 0, 4, 8}, {4, 0, 4, 4}}));
  EXPECT_EQ(merge_rects(in, MergeOrder::HorizontalFirst),
            (std::vector<Rect>{{0, 0, 8, 4}, {0, 4, 4, 4}}));
}

TEST(MergeRects, RepeatsUntilStable) {
  // One vertical+horizontal round yields (0,0,8,4) and (0,4,8,4); they only
  // stack in a second round.
  std::vector<Rect> in{{0, 0, 4, 4}, {4, 0, 4, 4}, {0, 4, 8, 4}};
  auto out = merge_rects(in);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (Rect{0, 0, 8, 8}));
}

TEST(MergeRects, SkipsMergesPastFieldLimit) {
  std::vector<Rect> in{{0, 0, 4, 3000}, {0, 3000, 4, 2000}};
  EXPECT_EQ(merge_rects(in), in);
  EXPECT_TRUE(oversized_rects(merge_rects(in)).empty());
}

TEST(MergeRects, PropertiesOnQuadtreeOutput) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 8 + rng() % 120;
    const std::size_t cols = 8 + rng() % 120;
    BitImage img = fixture::random_bits(rows, cols, 0.2, rng);
    auto content = content_rects(img, r_quadtree(img, 1 + rng() % 4, 1));
    for (auto order : {MergeOrder::VerticalFirst, MergeOrder::HorizontalFirst}) {
      auto merged = merge_rects(content, order);
      EXPECT_LE(merged.size(), content.size());
      EXPECT_EQ(coverage(rows, cols, merged), coverage(rows, cols, content));
      EXPECT_EQ(merge_rects(merged, order), merged);
    }
  }
}

TEST(SplitOversized, CutsIntoFieldSizedPieces) {
  auto out = split_oversized({{0, 0, 5000, 10}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], (Rect{0, 0, 4095, 10}));
  EXPECT_EQ(out[1], (Rect{4095, 0, 905, 10}));
  EXPECT_EQ(oversized_rects({{0, 0, 4096, 1}, {0, 1, 4095, 1}}).size(), 1u);
}
