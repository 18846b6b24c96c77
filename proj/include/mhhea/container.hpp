#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <vector>

#include "mhhea/error.hpp"
#include "mhhea/types.hpp"

namespace mhhea::io {

// Key file:    "MHK1" | L (u16 LE) | L bytes, k1 in bits 0..2, k2 in bits 3..5, bits 6..7 zero
// Cipher file: "MHC1" | version (u8 = 1) | flags (u8, bit 0 = cover mode)
//              | plaintext_bits (u64 LE) | vectors (u16 LE each)

inline constexpr std::array<std::uint8_t, 4> kKeyMagic{'M', 'H', 'K', '1'};
inline constexpr std::array<std::uint8_t, 4> kCipherMagic{'M', 'H', 'C', '1'};
inline constexpr std::uint8_t kCipherVersion = 1;
inline constexpr std::uint8_t kFlagCover = 0x01;
inline constexpr std::size_t kKeyHeaderSize = 6;
inline constexpr std::size_t kCipherHeaderSize = 14;

struct CipherFile {
  std::uint8_t flags = 0;
  std::uint64_t plaintext_bits = 0;
  std::vector<HidingVector> vectors;

  bool cover_mode() const noexcept { return flags & kFlagCover; }
  friend bool operator==(const CipherFile&, const CipherFile&) = default;
};

inline std::vector<std::uint8_t> encode_key(const KeyMatrix& key) {
  if (key.size() > 0xFFFF) throw Error(Errc::InvalidKey, "key file holds at most 65535 pairs");
  std::vector<std::uint8_t> out(kKeyMagic.begin(), kKeyMagic.end());
  out.push_back(static_cast<std::uint8_t>(key.size() & 0xFF));
  out.push_back(static_cast<std::uint8_t>(key.size() >> 8));
  for (const KeyPair& p : key.pairs()) out.push_back(static_cast<std::uint8_t>(p.k1 | (p.k2 << 3)));
  return out;
}

inline KeyMatrix decode_key(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kKeyHeaderSize) throw Error(Errc::KeyTruncated, "key header needs 6 bytes");
  if (!std::equal(kKeyMagic.begin(), kKeyMagic.end(), bytes.begin()))
    throw Error(Errc::KeyBadMagic, "expected MHK1");
  const std::size_t count = bytes[4] | (bytes[5] << 8);
  if (count == 0) throw Error(Errc::KeyEmpty, "key declares zero pairs");
  if (bytes.size() < kKeyHeaderSize + count)
    throw Error(Errc::KeyTruncated, "declared " + std::to_string(count) + " pairs, file too short");
  if (bytes.size() > kKeyHeaderSize + count) throw Error(Errc::KeyTrailingData, "bytes after last pair");
  std::vector<KeyPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t b = bytes[kKeyHeaderSize + i];
    if (b & 0xC0) throw Error(Errc::KeyReservedBits, "pair " + std::to_string(i) + " has reserved bits set");
    pairs.push_back({static_cast<std::uint8_t>(b & 7), static_cast<std::uint8_t>((b >> 3) & 7)});
  }
  return KeyMatrix(std::move(pairs));
}

inline std::vector<std::uint8_t> encode_cipher(const CipherFile& c) {
  std::vector<std::uint8_t> out(kCipherMagic.begin(), kCipherMagic.end());
  out.push_back(kCipherVersion);
  out.push_back(c.flags);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(c.plaintext_bits >> (8 * i)));
  out.reserve(out.size() + 2 * c.vectors.size());
  for (const HidingVector v : c.vectors) {
    out.push_back(v.low());
    out.push_back(v.high());
  }
  return out;
}

inline CipherFile decode_cipher(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCipherHeaderSize) throw Error(Errc::CipherTruncatedHeader, "cipher header needs 14 bytes");
  if (!std::equal(kCipherMagic.begin(), kCipherMagic.end(), bytes.begin()))
    throw Error(Errc::CipherBadMagic, "expected MHC1");
  if (bytes[4] != kCipherVersion)
    throw Error(Errc::CipherBadVersion, "unsupported version " + std::to_string(bytes[4]));
  CipherFile c;
  c.flags = bytes[5];
  if (c.flags & ~kFlagCover) throw Error(Errc::CipherReservedFlags, "unknown flag bits set");
  for (int i = 0; i < 8; ++i) c.plaintext_bits |= static_cast<std::uint64_t>(bytes[6 + i]) << (8 * i);
  const auto payload = bytes.subspan(kCipherHeaderSize);
  if (payload.size() % 2 != 0) throw Error(Errc::CipherTruncatedPayload, "odd payload byte count");
  c.vectors.reserve(payload.size() / 2);
  for (std::size_t i = 0; i < payload.size(); i += 2)
    c.vectors.push_back(HidingVector{static_cast<std::uint16_t>(payload[i] | (payload[i + 1] << 8))});
  return c;
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::Io, "read failed: " + path.string());
  return data;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::Io, "write failed: " + path.string());
}

inline KeyMatrix read_key(const std::filesystem::path& path) { return decode_key(read_file(path)); }
inline void write_key(const std::filesystem::path& path, const KeyMatrix& key) { write_file(path, encode_key(key)); }
inline CipherFile read_cipher(const std::filesystem::path& path) { return decode_cipher(read_file(path)); }
inline void write_cipher(const std::filesystem::path& path, const CipherFile& c) {
  write_file(path, encode_cipher(c));
}

}  // namespace mhhea::io
