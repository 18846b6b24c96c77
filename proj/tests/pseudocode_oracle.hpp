#pragma once

// Test-only: a line-by-line transliteration of the published encryption
// loop. It streams bits continuously (no 16-bit block confinement) and
// shares no code with the library.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

struct Pair {
  int k1;
  int k2;
};

struct PseudoResult {
  std::vector<std::uint16_t> vectors;
  // true when vector n took bits from two different 16-bit message blocks
  std::vector<bool> straddles;
};

// With confine_to_blocks set, the inner loop additionally stops when m
// reaches a multiple of 16, so no vector takes bits from two blocks.
inline PseudoResult pseudocode_encrypt(const std::vector<int>& M, std::vector<Pair> K,
                                       const std::vector<std::uint16_t>& V_source,
                                       bool confine_to_blocks = false) {
  PseudoResult r;
  const std::size_t L = K.size();
  std::size_t i = 0, m = 0, src = 0;
  while (m < M.size()) {
    i = i % L;
    std::uint16_t V = V_source.at(src++);
    if (K[i].k1 >= K[i].k2) std::swap(K[i].k1, K[i].k2);
    // V[K2+8 downto K1+8], MSB first
    int slice = 0;
    for (int b = K[i].k2 + 8; b >= K[i].k1 + 8; --b) slice = (slice << 1) | ((V >> b) & 1);
    int KN1 = (slice ^ K[i].k1) % 8;
    int KN2 = (KN1 + (K[i].k2 - K[i].k1)) % 8;
    if (KN1 >= KN2) std::swap(KN1, KN2);
    const std::size_t first_m = m;
    int q = 0;
    for (int j = KN1; j <= KN2; ++j) {
      q = q % 3;
      const bool block_done = confine_to_blocks && m > first_m && m % 16 == 0;
      if (m < M.size() && !block_done) {
        const int kbit = (K[i].k1 >> q) & 1;
        const int bit = M[m] ^ kbit;
        V = static_cast<std::uint16_t>((V & ~(1u << j)) | (static_cast<unsigned>(bit) << j));
        ++m;
      }
      ++q;
    }
    r.vectors.push_back(V);
    r.straddles.push_back(m > first_m && first_m / 16 != (m - 1) / 16);
    ++i;
  }
  return r;
}

inline std::vector<int> bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
  std::vector<int> bits;
  for (auto b : bytes)
    for (int k = 0; k < 8; ++k) bits.push_back((b >> k) & 1);
  return bits;
}

}  // namespace oracle
