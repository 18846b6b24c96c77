#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mhhea/error.hpp"
#include "mhhea/lfsr.hpp"
#include "mhhea/types.hpp"

namespace mhhea {

/// Embedding range within the low byte of a hiding vector; kn1 <= kn2.
struct ScrambledPair {
  std::uint8_t kn1 = 0;
  std::uint8_t kn2 = 0;

  constexpr unsigned width() const noexcept { return kn2 - kn1 + 1u; }
  friend constexpr bool operator==(ScrambledPair, ScrambledPair) = default;
};

/// Sorts a key pair ascending.
constexpr KeyPair normalize_pair(KeyPair p) {
  if (!p.valid()) throw Error(Errc::InvalidKey, "key component outside 0..7");
  if (p.k1 >= p.k2) std::swap(p.k1, p.k2);
  return p;
}

/// Derives the embedding locations for one vector from a normalized key pair.
///
/// The slice v[k2+8 .. k1+8] is read as an integer with bit k2+8 as its MSB,
/// XORed with k1 and reduced to 3 bits. The upper location wraps mod 8 so the
/// range never leaves the low byte, then the pair is re-sorted.
constexpr ScrambledPair scramble_key(KeyPair k, HidingVector v) {
  if (!k.valid() || k.k1 > k.k2) throw Error(Errc::InvalidKey, "scramble_key needs a normalized pair");
  const unsigned span = k.k2 - k.k1 + 1u;
  const unsigned slice = (v.bits >> (k.k1 + 8u)) & ((1u << span) - 1u);
  auto kn1 = static_cast<std::uint8_t>((slice ^ k.k1) & 7u);
  auto kn2 = static_cast<std::uint8_t>((kn1 + (k.k2 - k.k1)) & 7u);
  if (kn1 >= kn2) std::swap(kn1, kn2);
  return {kn1, kn2};
}

/// Bit t of the message scrambler: bit (t mod 3) of k1, LSB first.
constexpr unsigned key_bit(std::uint8_t k1, unsigned t) noexcept {
  return (k1 >> (t % 3)) & 1u;
}

/// Bits left before the cursor crosses into the next 16-bit block.
constexpr std::uint64_t block_remaining(std::uint64_t cursor, std::uint64_t total_bits) noexcept {
  const std::uint64_t block_end = std::min<std::uint64_t>((cursor / kBlockBits + 1) * kBlockBits, total_bits);
  return block_end > cursor ? block_end - cursor : 0;
}

/// Bits a vector carries: full width unless the block or the stream ends first.
constexpr unsigned embed_budget(ScrambledPair kn, std::uint64_t cursor, std::uint64_t total_bits) noexcept {
  return static_cast<unsigned>(std::min<std::uint64_t>(kn.width(), block_remaining(cursor, total_bits)));
}

struct EmbedResult {
  HidingVector vector;
  unsigned consumed = 0;
};

/// Replaces v[kn1 + t] with stream bit (m + t) XOR key_bit(k1, t) for
/// t < budget, advancing the stream. Consumes fewer bits only if the stream
/// runs out; an exhausted stream leaves v untouched.
inline EmbedResult embed_bits(HidingVector v, ScrambledPair kn, PlainBitStream& stream,
                              std::uint8_t k1, unsigned budget) {
  const unsigned n = static_cast<unsigned>(
      std::min<std::uint64_t>({budget, kn.width(), stream.remaining()}));
  std::uint16_t out = v.bits;
  for (unsigned t = 0; t < n; ++t) {
    const unsigned pos = kn.kn1 + t;
    const unsigned b = stream.peek(t) ^ key_bit(k1, t);
    out = static_cast<std::uint16_t>((out & ~(1u << pos)) | (b << pos));
  }
  stream.advance(n);
  return {HidingVector{out}, n};
}

/// Encrypts the first `total_bits` bits of `plaintext`.
template <VectorSource Source>
std::vector<HidingVector> encrypt_bits(std::span<const std::uint8_t> plaintext, std::uint64_t total_bits,
                                       const KeyMatrix& key, Source& source) {
  PlainBitStream stream(plaintext, total_bits);
  std::vector<HidingVector> out;
  std::size_t i = 0;
  while (!stream.exhausted()) {
    const HidingVector v = source.next();
    i %= key.size();
    const KeyPair k = normalize_pair(key[i]);
    const ScrambledPair kn = scramble_key(k, v);
    const unsigned budget = embed_budget(kn, stream.cursor(), stream.total_bits());
    out.push_back(embed_bits(v, kn, stream, k.k1, budget).vector);
    ++i;
  }
  return out;
}

template <VectorSource Source>
std::vector<HidingVector> encrypt(std::span<const std::uint8_t> plaintext, const KeyMatrix& key,
                                  Source& source) {
  return encrypt_bits(plaintext, plaintext.size() * 8, key, source);
}

/// Per-vector consumed bit counts, recomputed from the received high bytes.
/// Stops once `total_bits` are covered or the high bytes run out; callers
/// compare the sum against `total_bits` to detect truncation.
inline std::vector<unsigned> payload_schedule(const KeyMatrix& key, std::span<const std::uint8_t> vector_highs,
                                              std::uint64_t total_bits) {
  std::vector<unsigned> schedule;
  std::uint64_t cursor = 0;
  for (std::size_t n = 0; n < vector_highs.size() && cursor < total_bits; ++n) {
    const KeyPair k = normalize_pair(key[n % key.size()]);
    const ScrambledPair kn = scramble_key(k, HidingVector{static_cast<std::uint16_t>(vector_highs[n] << 8)});
    const unsigned take = embed_budget(kn, cursor, total_bits);
    schedule.push_back(take);
    cursor += take;
  }
  return schedule;
}

/// Inverse of encrypt. Embedding never touches bits 8..15, so the scrambled
/// locations are recomputed from the received vectors themselves.
inline std::vector<std::uint8_t> decrypt(std::span<const HidingVector> vectors, const KeyMatrix& key,
                                         std::uint64_t total_bits) {
  BitWriter bits;
  std::size_t n = 0;
  while (bits.size() < total_bits) {
    if (n == vectors.size())
      throw Error(Errc::TruncatedCiphertext, "vectors carry " + std::to_string(bits.size()) + " of " +
                                                 std::to_string(total_bits) + " plaintext bits");
    const HidingVector v = vectors[n];
    const KeyPair k = normalize_pair(key[n % key.size()]);
    const ScrambledPair kn = scramble_key(k, v);
    const unsigned take = embed_budget(kn, bits.size(), total_bits);
    for (unsigned t = 0; t < take; ++t) bits.push(v.bit(kn.kn1 + t) ^ key_bit(k.k1, t));
    ++n;
  }
  return std::move(bits).take();
}

}  // namespace mhhea
