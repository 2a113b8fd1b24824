#pragma once

// Raw bit files: a 64-bit big-endian bit count followed by the bits packed
// eight per byte, MSB first, the last byte zero-padded.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "stegodoc/codec.hpp"
#include "stegodoc/error.hpp"

namespace stegodoc::bitfile {

inline void write(std::ostream& out, const BitVector& bits) {
  const std::uint64_t n = bits.size();
  for (int i = 7; i >= 0; --i) out.put(static_cast<char>((n >> (8 * i)) & 0xFF));
  unsigned char byte = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) byte |= static_cast<unsigned char>(0x80u >> (i % 8));
    if (i % 8 == 7) {
      out.put(static_cast<char>(byte));
      byte = 0;
    }
  }
  if (bits.size() % 8 != 0) out.put(static_cast<char>(byte));
}

inline BitVector read(std::istream& in) {
  unsigned char len[8];
  in.read(reinterpret_cast<char*>(len), 8);
  if (in.gcount() != 8) throw FormatError("bit file: missing length prefix");
  std::uint64_t n = 0;
  for (unsigned char b : len) n = (n << 8) | b;
  if (n > (std::uint64_t{1} << 40)) throw FormatError("bit file: implausible length");

  std::vector<unsigned char> bytes((n + 7) / 8);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw FormatError("bit file: truncated");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("bit file: trailing bytes");
  BitVector bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  if (n % 8 != 0 && (bytes.back() & (0xFFu >> (n % 8))) != 0) {
    throw FormatError("bit file: padding bits are not zero");
  }
  return bits;
}

inline BitVector load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read(in);
}

inline void save(const std::filesystem::path& path, const BitVector& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write(out, bits);
  if (!out) throw FormatError("write failed: " + path.string());
}

/// 12-bit words laid end to end, MSB first.
inline BitVector words_to_bits(std::span<const std::uint16_t> words) {
  BitVector bits;
  bits.reserve(words.size() * 12);
  for (auto w : words) append_bits(bits, w & 0xFFFu, 12);
  return bits;
}

inline std::vector<std::uint16_t> bits_to_words(const BitVector& bits) {
  if (bits.size() % 12 != 0) throw FormatError("word stream length is not a multiple of 12");
  std::vector<std::uint16_t> words(bits.size() / 12);
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = static_cast<std::uint16_t>(read_bits(bits, 12 * i, 12));
  }
  return words;
}

}  // namespace stegodoc::bitfile
