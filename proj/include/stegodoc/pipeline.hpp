#pragma once

// End-to-end document hiding: halftone -> complement -> quadtree -> content
// blocks -> merge -> payload -> decimal code -> 12-bit words -> LSB embed,
// and the reverse.

#include <cstdint>
#include <vector>

#include "stegodoc/codec.hpp"
#include "stegodoc/error.hpp"
#include "stegodoc/halftone.hpp"
#include "stegodoc/image.hpp"
#include "stegodoc/metrics.hpp"
#include "stegodoc/quadtree.hpp"
#include "stegodoc/stego.hpp"

namespace stegodoc {

struct HideOptions {
  EmbedParams embed;
  std::size_t min_length = 4;
  MergeOrder merge_order = MergeOrder::VerticalFirst;
};

struct HideStats {
  std::size_t host_rows = 0;
  std::size_t host_cols = 0;
  std::size_t doc_rows = 0;
  std::size_t doc_cols = 0;
  std::size_t leaf_count = 0;
  std::size_t content_rect_count = 0;
  std::size_t block_count = 0;
  std::size_t payload_bits = 0;
  std::size_t words = 0;
  std::size_t capacity_words = 0;
  double embedding_rate_bpp = 0.0;
  double physical_rate_bpp = 0.0;
};

struct HideResult {
  GrayImage stego;
  BitImage halftone;  // sender's halftone, before complementing
  HideStats stats;
};

struct RevealResult {
  BitImage halftone;
  GrayImage document;
  std::size_t words_read = 0;
  std::size_t block_count = 0;
};

/// Reveal refuses headers declaring more document pixels than this.
inline constexpr std::uint64_t kMaxRevealPixels = std::uint64_t{1} << 28;

struct EncodedMessage {
  Payload payload;
  std::vector<std::uint16_t> words;
  std::size_t leaf_count = 0;
  std::size_t content_rect_count = 0;
};

/// Builds the payload for a message image whose content bits are 1.
inline Payload build_payload(const BitImage& message, std::size_t min_length,
                             MergeOrder order = MergeOrder::VerticalFirst,
                             std::size_t* leaf_count = nullptr,
                             std::size_t* content_count = nullptr) {
  const Decomposition d = r_quadtree(message, min_length, 1);
  auto content = content_rects(message, d);
  if (leaf_count) *leaf_count = d.leaves.size();
  if (content_count) *content_count = content.size();
  content = split_oversized(content);

  Payload p;
  p.doc_rows = static_cast<std::uint32_t>(message.rows());
  p.doc_cols = static_cast<std::uint32_t>(message.cols());
  p.blocks = merge_rects(std::move(content), order);
  std::uint64_t total = 0;
  for (const auto& r : p.blocks) total += r.area();
  p.contents.reserve(total);
  for (const auto& r : p.blocks) {
    for (std::size_t i = r.y; i < r.bottom(); ++i) {
      for (auto v : message.row(i).subspan(r.x, r.w)) p.contents.push_back(v != 0);
    }
  }
  return p;
}

/// Paints every block of the payload onto an all-zero image.
inline BitImage assemble_message(const Payload& p) {
  BitImage img(p.doc_rows, p.doc_cols, 0);
  BitImage painted(p.doc_rows, p.doc_cols, 0);
  std::size_t k = 0;
  for (const auto& r : p.blocks) {
    for (std::size_t i = r.y; i < r.bottom(); ++i) {
      for (std::size_t j = r.x; j < r.right(); ++j) {
        if (painted(i, j)) throw CorruptPayload("payload blocks overlap");
        painted(i, j) = 1;
        img(i, j) = p.contents[k++] ? 1 : 0;
      }
    }
  }
  return img;
}

inline EncodedMessage encode_message(const BitImage& message, std::size_t min_length,
                                     MergeOrder order = MergeOrder::VerticalFirst) {
  EncodedMessage m;
  m.payload = build_payload(message, min_length, order, &m.leaf_count, &m.content_rect_count);
  m.words = tokens_to_words(encode_stream(serialize_payload(m.payload)));
  return m;
}

inline HideResult hide_document(const GrayImage& host, const GrayImage& doc, StegoKey key,
                                const HideOptions& opts = {}) {
  HideResult res;
  res.halftone = to_halftone(doc);
  const EncodedMessage msg = encode_message(complement(res.halftone), opts.min_length,
                                            opts.merge_order);

  const PixelMask mask = embeddable_mask(host, opts.embed);
  const std::size_t available = capacity_words(mask);
  if (msg.words.size() > available) throw CapacityExceeded(available, msg.words.size());
  res.stego = embed(host, msg.words, key, opts.embed);

  auto& s = res.stats;
  s.host_rows = host.rows();
  s.host_cols = host.cols();
  s.doc_rows = doc.rows();
  s.doc_cols = doc.cols();
  s.leaf_count = msg.leaf_count;
  s.content_rect_count = msg.content_rect_count;
  s.block_count = msg.payload.blocks.size();
  s.payload_bits = payload_bit_length(msg.payload.blocks.size(), msg.payload.contents.size());
  s.words = msg.words.size();
  s.capacity_words = available;
  const Rates r = rates(host.rows(), host.cols(), doc.rows(), doc.cols(), msg.words.size());
  s.embedding_rate_bpp = r.embedding_rate_bpp;
  s.physical_rate_bpp = r.physical_rate_bpp;
  return res;
}

/// Inverse of hide_document. Words are pulled from the stego image only as
/// far as the header says the payload extends; any inconsistency (bad token,
/// block outside the page, stream too short) raises CorruptPayload, which is
/// what a wrong key or threshold produces.
inline RevealResult reveal_document(const GrayImage& stego, StegoKey key, const EmbedParams& p) {
  WordReader reader(stego, key, p);
  const std::uint64_t max_bits = std::uint64_t{kMaxTokenLength} * reader.capacity();

  BitVector bits;
  Token prev{};
  bool have_prev = false;
  auto pull = [&](std::uint64_t target) {
    if (target > max_bits) throw CorruptPayload("declared payload exceeds what the image can hold");
    while (bits.size() < target) {
      if (reader.remaining() == 0) throw CorruptPayload("stego stream ended before the payload");
      if (have_prev && !is_canonical(prev, false)) {
        throw CorruptPayload("token stream is not in canonical form");
      }
      prev = word_to_token(reader.next());
      have_prev = true;
      append_token(bits, prev);
    }
  };

  pull(kHeaderBits);
  const PayloadHeader header = parse_header(bits);
  if (std::uint64_t{header.doc_rows} * header.doc_cols > kMaxRevealPixels) {
    throw CorruptPayload("declared document is implausibly large");
  }
  pull(kHeaderBits + kRectBits * header.block_count);
  const auto blocks = parse_blocks(bits, header);
  std::uint64_t content_bits = 0;
  for (const auto& r : blocks) content_bits += r.area();
  pull(payload_bit_length(blocks.size(), content_bits));
  if (bits.size() != payload_bit_length(blocks.size(), content_bits) ||
      !is_canonical(prev, true)) {
    throw CorruptPayload("token stream does not end with the payload");
  }

  const Payload payload = parse_payload(bits);
  RevealResult res;
  res.halftone = complement(assemble_message(payload));
  res.document = from_halftone(res.halftone);
  res.words_read = reader.consumed();
  res.block_count = payload.blocks.size();
  return res;
}

}  // namespace stegodoc
