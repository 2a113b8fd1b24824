#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stegodoc/error.hpp"
#include "stegodoc/image.hpp"

namespace stegodoc {

using BitVector = std::vector<bool>;

/// One unit of the decimal code: `length` message bits whose MSB-first value
/// is `value`. Both fields fit in 6 bits.
struct Token {
  std::uint8_t length = 0;
  std::uint8_t value = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

inline constexpr std::size_t kMaxTokenLength = 63;
inline constexpr std::size_t kDimBits = 20;
inline constexpr std::size_t kBlockCountBits = 16;
inline constexpr std::size_t kRectFieldBits = 12;
inline constexpr std::size_t kHeaderBits = 2 * kDimBits + kBlockCountBits;
inline constexpr std::size_t kRectBits = 4 * kRectFieldBits;

/// Document dimensions, block list and the concatenated block contents.
struct Payload {
  std::uint32_t doc_rows = 0;
  std::uint32_t doc_cols = 0;
  std::vector<Rect> blocks;
  BitVector contents;

  friend bool operator==(const Payload&, const Payload&) = default;
};

// ---------------------------------------------------------------------------
// Bit helpers

inline void append_bits(BitVector& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back((value >> i) & 1u);
}

inline std::uint64_t read_bits(const BitVector& in, std::size_t pos, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | (in[pos + i] ? 1u : 0u);
  return v;
}

// ---------------------------------------------------------------------------
// Payload layout:
//   rows(20) cols(20) block_count(16) { x(12) y(12) w(12) h(12) }* contents
// all fields MSB-first.

inline std::uint64_t payload_bit_length(std::size_t block_count, std::uint64_t content_bits) {
  return kHeaderBits + kRectBits * block_count + content_bits;
}

inline BitVector serialize_payload(const Payload& p) {
  auto check = [](std::uint64_t v, std::size_t width, const char* what) {
    if (v >= (std::uint64_t{1} << width)) {
      throw FormatError(std::string("payload field overflow: ") + what);
    }
  };
  check(p.doc_rows, kDimBits, "doc_rows");
  check(p.doc_cols, kDimBits, "doc_cols");
  check(p.blocks.size(), kBlockCountBits, "block_count");

  std::uint64_t content_bits = 0;
  for (const auto& r : p.blocks) {
    check(r.x, kRectFieldBits, "x");
    check(r.y, kRectFieldBits, "y");
    check(r.w, kRectFieldBits, "w");
    check(r.h, kRectFieldBits, "h");
    content_bits += r.area();
  }
  if (content_bits != p.contents.size()) {
    throw FormatError("payload contents length does not match block areas");
  }

  BitVector out;
  out.reserve(payload_bit_length(p.blocks.size(), content_bits));
  append_bits(out, p.doc_rows, kDimBits);
  append_bits(out, p.doc_cols, kDimBits);
  append_bits(out, p.blocks.size(), kBlockCountBits);
  for (const auto& r : p.blocks) {
    append_bits(out, r.x, kRectFieldBits);
    append_bits(out, r.y, kRectFieldBits);
    append_bits(out, r.w, kRectFieldBits);
    append_bits(out, r.h, kRectFieldBits);
  }
  out.insert(out.end(), p.contents.begin(), p.contents.end());
  return out;
}

/// Header fields decoded ahead of the block contents.
struct PayloadHeader {
  std::uint32_t doc_rows = 0;
  std::uint32_t doc_cols = 0;
  std::size_t block_count = 0;
};

inline PayloadHeader parse_header(const BitVector& bits) {
  if (bits.size() < kHeaderBits) throw CorruptPayload("payload truncated in header");
  PayloadHeader h;
  h.doc_rows = static_cast<std::uint32_t>(read_bits(bits, 0, kDimBits));
  h.doc_cols = static_cast<std::uint32_t>(read_bits(bits, kDimBits, kDimBits));
  h.block_count = read_bits(bits, 2 * kDimBits, kBlockCountBits);
  if (h.doc_rows == 0 || h.doc_cols == 0) throw CorruptPayload("payload declares an empty document");
  return h;
}

/// Block list following the header. Every block must lie inside the declared
/// document.
inline std::vector<Rect> parse_blocks(const BitVector& bits, const PayloadHeader& h) {
  if (bits.size() < kHeaderBits + kRectBits * h.block_count) {
    throw CorruptPayload("payload truncated in block list");
  }
  std::vector<Rect> blocks;
  blocks.reserve(h.block_count);
  std::size_t pos = kHeaderBits;
  for (std::size_t i = 0; i < h.block_count; ++i) {
    Rect r;
    r.x = static_cast<std::uint32_t>(read_bits(bits, pos, kRectFieldBits));
    r.y = static_cast<std::uint32_t>(read_bits(bits, pos + 12, kRectFieldBits));
    r.w = static_cast<std::uint32_t>(read_bits(bits, pos + 24, kRectFieldBits));
    r.h = static_cast<std::uint32_t>(read_bits(bits, pos + 36, kRectFieldBits));
    pos += kRectBits;
    if (r.w == 0 || r.h == 0 || r.right() > h.doc_cols || r.bottom() > h.doc_rows) {
      throw CorruptPayload("block " + std::to_string(i) + " lies outside the document");
    }
    blocks.push_back(r);
  }
  return blocks;
}

inline Payload parse_payload(const BitVector& bits) {
  const PayloadHeader h = parse_header(bits);
  Payload p;
  p.doc_rows = h.doc_rows;
  p.doc_cols = h.doc_cols;
  p.blocks = parse_blocks(bits, h);
  std::uint64_t content_bits = 0;
  for (const auto& r : p.blocks) content_bits += r.area();
  const std::uint64_t start = kHeaderBits + kRectBits * h.block_count;
  if (bits.size() < start + content_bits) throw CorruptPayload("payload truncated in contents");
  p.contents.assign(bits.begin() + static_cast<std::ptrdiff_t>(start),
                    bits.begin() + static_cast<std::ptrdiff_t>(start + content_bits));
  return p;
}

// ---------------------------------------------------------------------------
// Decimal code

/// Reads the stream greedily: with z zeros at the cursor, a token takes
/// min(63, z + 6, remaining) bits. Those bits never exceed 63 in value, and
/// one more bit would either exceed 63 or pass the 63-bit cap.
inline std::vector<Token> encode_stream(const BitVector& bits) {
  std::vector<Token> tokens;
  const std::size_t n = bits.size();
  std::size_t pos = 0;
  while (pos < n) {
    const std::size_t remaining = n - pos;
    std::size_t zeros = 0;
    while (zeros < remaining && zeros < kMaxTokenLength && !bits[pos + zeros]) ++zeros;
    const std::size_t len = std::min({kMaxTokenLength, zeros + 6, remaining});
    const std::uint64_t value = read_bits(bits, pos, len);
    tokens.push_back({static_cast<std::uint8_t>(len), static_cast<std::uint8_t>(value)});
    pos += len;
  }
  return tokens;
}

inline void append_token(BitVector& out, const Token& t) {
  if (t.length > kMaxTokenLength || t.value > 63 ||
      (t.length < 6 && t.value >= (1u << t.length))) {
    throw CorruptPayload("invalid token (" + std::to_string(t.length) + "," +
                         std::to_string(t.value) + ")");
  }
  append_bits(out, t.value, t.length);
}

/// True if encode_stream could have produced `t`. Inside the stream a token
/// shorter than 63 ends its zero run, so its value has the top bit set. Only
/// the last token may be shorter than 6.
inline bool is_canonical(const Token& t, bool last) {
  if (t.length == 0 || t.length > kMaxTokenLength || t.value > 63) return false;
  if (t.length < 6) return last && t.value < (1u << t.length);
  return last || t.length == kMaxTokenLength || t.value >= 32;
}

inline BitVector decode_stream(std::span<const Token> tokens) {
  BitVector out;
  for (const auto& t : tokens) append_token(out, t);
  return out;
}

inline std::uint16_t token_to_word(const Token& t) {
  return static_cast<std::uint16_t>(((t.length & 0x3Fu) << 6) | (t.value & 0x3Fu));
}

inline Token word_to_token(std::uint16_t w) {
  return {static_cast<std::uint8_t>((w >> 6) & 0x3Fu), static_cast<std::uint8_t>(w & 0x3Fu)};
}

inline std::vector<std::uint16_t> tokens_to_words(std::span<const Token> tokens) {
  std::vector<std::uint16_t> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(token_to_word(t));
  return words;
}

inline std::vector<Token> words_to_tokens(std::span<const std::uint16_t> words) {
  std::vector<Token> tokens;
  tokens.reserve(words.size());
  for (auto w : words) tokens.push_back(word_to_token(w));
  return tokens;
}

}  // namespace stegodoc
