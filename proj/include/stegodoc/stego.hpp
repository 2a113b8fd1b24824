#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "stegodoc/error.hpp"
#include "stegodoc/image.hpp"

namespace stegodoc {

struct MaskTag {};
/// 1 where a host pixel may carry payload bits.
using PixelMask = BasicImage<MaskTag>;

struct StegoKey {
  std::uint64_t seed = 0;
};

struct EmbedParams {
  /// A pixel is embeddable when the sample SD of its 3x3 neighbourhood,
  /// computed on the 5 MSBs only, is strictly greater than this.
  double sd_threshold = 2.5;
};

inline constexpr std::size_t kPixelsPerWord = 4;
inline constexpr std::uint16_t kWordMask = 0x0FFF;

/// Texture mask over the host. The three LSBs of every pixel are cleared
/// before the neighbourhood statistics are taken, so writing those bits can
/// never change the mask. Border pixels are never embeddable.
inline PixelMask embeddable_mask(const GrayImage& host, const EmbedParams& p) {
  if (host.rows() < 3 || host.cols() < 3) {
    throw std::invalid_argument("embeddable_mask: host must be at least 3x3");
  }
  if (!std::isfinite(p.sd_threshold) || p.sd_threshold < 0.0) {
    throw std::invalid_argument("embeddable_mask: sd_threshold must be finite and >= 0");
  }
  // With s1 = sum and s2 = sum of squares over the nine quantized samples,
  // the sample variance is (9*s2 - s1^2) / 72. Compare without the sqrt.
  const double limit = 72.0 * p.sd_threshold * p.sd_threshold;

  PixelMask mask(host.rows(), host.cols(), 0);
  for (std::size_t r = 1; r + 1 < host.rows(); ++r) {
    for (std::size_t c = 1; c + 1 < host.cols(); ++c) {
      std::int64_t s1 = 0;
      std::int64_t s2 = 0;
      for (std::size_t i = r - 1; i <= r + 1; ++i) {
        for (std::size_t j = c - 1; j <= c + 1; ++j) {
          const std::int64_t v = host(i, j) & 0xF8;
          s1 += v;
          s2 += v * v;
        }
      }
      const std::int64_t scaled = 9 * s2 - s1 * s1;
      mask(r, c) = static_cast<double>(scaled) > limit ? 1 : 0;
    }
  }
  return mask;
}

/// Raster-order indices of the embeddable pixels.
inline std::vector<std::size_t> embeddable_positions(const PixelMask& mask) {
  std::vector<std::size_t> pos;
  auto px = mask.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (px[i]) pos.push_back(i);
  }
  return pos;
}

inline std::size_t capacity_words(const PixelMask& mask) {
  return embeddable_positions(mask).size() / kPixelsPerWord;
}

/// xorshift64* generator producing 12-bit words. Seed 0 is remapped to a
/// fixed non-zero constant because the xorshift state must never be zero.
class Keystream {
 public:
  explicit Keystream(StegoKey key) noexcept
      : state_(key.seed == 0 ? 0x9E3779B97F4A7C15ull : key.seed) {}

  std::uint16_t next() noexcept {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return static_cast<std::uint16_t>(((state_ * 0x2545F4914F6CDD1Dull) >> 52) & kWordMask);
  }

 private:
  std::uint64_t state_;
};

inline std::vector<std::uint16_t> keystream(StegoKey key, std::size_t n) {
  Keystream ks(key);
  std::vector<std::uint16_t> out(n);
  for (auto& w : out) w = ks.next();
  return out;
}

namespace detail {

inline void write_word(GrayImage& img, std::span<const std::size_t> four, std::uint16_t word) {
  auto px = img.pixels();
  for (std::size_t k = 0; k < kPixelsPerWord; ++k) {
    const auto triple = static_cast<std::uint8_t>((word >> (9 - 3 * k)) & 7u);
    px[four[k]] = static_cast<std::uint8_t>((px[four[k]] & 0xF8) | triple);
  }
}

inline std::uint16_t read_word(const GrayImage& img, std::span<const std::size_t> four) {
  auto px = img.pixels();
  std::uint16_t word = 0;
  for (std::size_t k = 0; k < kPixelsPerWord; ++k) {
    word = static_cast<std::uint16_t>((word << 3) | (px[four[k]] & 7u));
  }
  return word;
}

}  // namespace detail

/// Writes each word, XORed with the keystream, into the 3 LSBs of four
/// consecutive embeddable pixels (MSB triple first). Nothing else changes.
inline GrayImage embed(const GrayImage& host, std::span<const std::uint16_t> words, StegoKey key,
                       const EmbedParams& p) {
  if (words.empty()) return host;
  const auto positions = embeddable_positions(embeddable_mask(host, p));
  const std::size_t available = positions.size() / kPixelsPerWord;
  if (words.size() > available) throw CapacityExceeded(available, words.size());

  GrayImage stego = host;
  Keystream ks(key);
  std::span<const std::size_t> pos(positions);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] > kWordMask) throw std::invalid_argument("embed: word exceeds 12 bits");
    detail::write_word(stego, pos.subspan(i * kPixelsPerWord, kPixelsPerWord),
                       static_cast<std::uint16_t>(words[i] ^ ks.next()));
  }
  return stego;
}

/// Sequential reader over the words hidden in a stego image.
class WordReader {
 public:
  WordReader(const GrayImage& stego, StegoKey key, const EmbedParams& p)
      : stego_(&stego), positions_(embeddable_positions(embeddable_mask(stego, p))), ks_(key) {}

  std::size_t capacity() const noexcept { return positions_.size() / kPixelsPerWord; }
  std::size_t consumed() const noexcept { return next_; }
  std::size_t remaining() const noexcept { return capacity() - next_; }

  std::uint16_t next() {
    if (next_ >= capacity()) throw CapacityExceeded(capacity(), next_ + 1);
    std::span<const std::size_t> pos(positions_);
    const auto raw = detail::read_word(*stego_, pos.subspan(next_ * kPixelsPerWord, kPixelsPerWord));
    ++next_;
    return static_cast<std::uint16_t>(raw ^ ks_.next());
  }

 private:
  const GrayImage* stego_;
  std::vector<std::size_t> positions_;
  Keystream ks_;
  std::size_t next_ = 0;
};

inline std::vector<std::uint16_t> extract(const GrayImage& stego, std::size_t word_count,
                                          StegoKey key, const EmbedParams& p) {
  WordReader reader(stego, key, p);
  if (word_count > reader.capacity()) throw CapacityExceeded(reader.capacity(), word_count);
  std::vector<std::uint16_t> words(word_count);
  for (auto& w : words) w = reader.next();
  return words;
}

}  // namespace stegodoc
