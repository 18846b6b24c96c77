#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mhhea/error.hpp"

namespace mhhea {

inline constexpr unsigned kVectorBits = 16;
inline constexpr unsigned kBlockBits = 16;   // Message Alignment buffer width
inline constexpr unsigned kWordBits = 32;    // Message Cache width
inline constexpr std::size_t kDefaultPairs = 16;

constexpr std::uint16_t rotl16(std::uint16_t x, unsigned n) noexcept {
  return std::rotl(x, static_cast<int>(n % 16));
}

constexpr std::uint16_t rotr16(std::uint16_t x, unsigned n) noexcept {
  return std::rotr(x, static_cast<int>(n % 16));
}

/// One row of the secret key: two 3-bit integers.
struct KeyPair {
  std::uint8_t k1 = 0;
  std::uint8_t k2 = 0;

  constexpr bool valid() const noexcept { return k1 < 8 && k2 < 8; }
  friend constexpr bool operator==(KeyPair, KeyPair) = default;
};

/// L pairs of 3-bit integers, L >= 1.
class KeyMatrix {
 public:
  explicit KeyMatrix(std::vector<KeyPair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw Error(Errc::InvalidKey, "key must hold at least one pair");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (!pairs_[i].valid())
        throw Error(Errc::InvalidKey, "pair " + std::to_string(i) + " has a component outside 0..7");
    }
  }

  std::size_t size() const noexcept { return pairs_.size(); }
  const KeyPair& operator[](std::size_t i) const noexcept { return pairs_[i]; }
  std::span<const KeyPair> pairs() const noexcept { return pairs_; }

  friend bool operator==(const KeyMatrix&, const KeyMatrix&) = default;

 private:
  std::vector<KeyPair> pairs_;
};

/// Draws `count` uniformly random pairs.
template <class Urbg>
KeyMatrix generate_key(std::size_t count, Urbg& rng) {
  if (count == 0) throw Error(Errc::InvalidKey, "pair count must be at least 1");
  std::uniform_int_distribution<int> dist(0, 7);
  std::vector<KeyPair> pairs(count);
  for (auto& p : pairs) {
    p.k1 = static_cast<std::uint8_t>(dist(rng));
    p.k2 = static_cast<std::uint8_t>(dist(rng));
  }
  return KeyMatrix(std::move(pairs));
}

/// A 16-bit word carrying embedded message bits. Bit 0 is the least
/// significant bit; the high byte (bits 8..15) scrambles the hiding locations.
struct HidingVector {
  std::uint16_t bits = 0;

  constexpr std::uint8_t low() const noexcept { return static_cast<std::uint8_t>(bits & 0xFF); }
  constexpr std::uint8_t high() const noexcept { return static_cast<std::uint8_t>(bits >> 8); }
  constexpr unsigned bit(unsigned i) const noexcept { return (bits >> i) & 1u; }

  friend constexpr bool operator==(HidingVector, HidingVector) = default;
};

/// Read cursor over a plaintext bit sequence. Bytes are consumed in order,
/// least significant bit first. Does not own the bytes.
class PlainBitStream {
 public:
  explicit PlainBitStream(std::span<const std::uint8_t> bytes)
      : PlainBitStream(bytes, bytes.size() * 8) {}

  PlainBitStream(std::span<const std::uint8_t> bytes, std::uint64_t total_bits)
      : bytes_(bytes), total_(total_bits) {
    if (total_bits > bytes.size() * 8)
      throw std::invalid_argument("bit count exceeds backing byte span");
  }

  std::uint64_t cursor() const noexcept { return cursor_; }
  std::uint64_t total_bits() const noexcept { return total_; }
  std::uint64_t remaining() const noexcept { return total_ - cursor_; }
  bool exhausted() const noexcept { return cursor_ == total_; }

  /// Bit at absolute position `pos`.
  unsigned bit_at(std::uint64_t pos) const noexcept {
    return (bytes_[pos / 8] >> (pos % 8)) & 1u;
  }

  unsigned peek(std::uint64_t offset = 0) const noexcept { return bit_at(cursor_ + offset); }

  void advance(std::uint64_t n) {
    if (n > remaining()) throw std::out_of_range("advance past end of bit stream");
    cursor_ += n;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t total_ = 0;
  std::uint64_t cursor_ = 0;
};

/// Packs bits LSB-first into bytes; the inverse of PlainBitStream's order.
class BitWriter {
 public:
  void push(unsigned bit) {
    if (count_ % 8 == 0) bytes_.push_back(0);
    bytes_.back() |= static_cast<std::uint8_t>((bit & 1u) << (count_ % 8));
    ++count_;
  }

  std::uint64_t size() const noexcept { return count_; }
  std::vector<std::uint8_t> take() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t count_ = 0;
};

}  // namespace mhhea
