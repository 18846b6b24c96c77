#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>

#include "mhhea/error.hpp"
#include "mhhea/types.hpp"

namespace mhhea {

/// 16-bit Fibonacci LFSR over x^16 + x^14 + x^13 + x^11 + 1.
///
/// The register shifts right; the feedback bit is the XOR of state bits
/// 0, 2, 3 and 5 (taps 16, 14, 13, 11 counted from the output end) and enters
/// at bit 15. With a primitive polynomial every nonzero seed walks all
/// 2^16 - 1 nonzero states before repeating.
class Lfsr16 {
 public:
  static constexpr std::uint32_t kPeriod = 65535;

  static constexpr std::uint16_t next(std::uint16_t s) noexcept {
    const unsigned fb = (s ^ (s >> 2) ^ (s >> 3) ^ (s >> 5)) & 1u;
    return static_cast<std::uint16_t>((s >> 1) | (fb << 15));
  }

  explicit constexpr Lfsr16(std::uint16_t seed) : state_(seed) {
    if (seed == 0) throw Error(Errc::InvalidSeed, "LFSR seed must be nonzero");
  }

  constexpr std::uint16_t state() const noexcept { return state_; }
  constexpr std::uint16_t step() noexcept { return state_ = next(state_); }

 private:
  std::uint16_t state_;
};

template <class S>
concept VectorSource = requires(S& s) {
  { s.next() } -> std::same_as<HidingVector>;
};

/// Hiding vectors from the LFSR: one step per vector, the full state word is
/// the vector. The first vector is therefore next(seed), never the seed.
class LfsrSource {
 public:
  explicit constexpr LfsrSource(std::uint16_t seed) : reg_(seed) {}

  constexpr HidingVector next() noexcept { return HidingVector{reg_.step()}; }
  constexpr const Lfsr16& reg() const noexcept { return reg_; }

 private:
  Lfsr16 reg_;
};

/// Hiding vectors taken from caller-supplied cover data, two bytes per
/// vector, low byte first. The bytes must outlive the source.
class CoverSource {
 public:
  explicit CoverSource(std::span<const std::uint8_t> bytes) noexcept : bytes_(bytes) {}

  HidingVector next() {
    if (bytes_.size() - pos_ < 2)
      throw Error(Errc::CoverTooSmall,
                  "cover data exhausted after " + std::to_string(pos_ / 2) + " vectors");
    const auto lo = bytes_[pos_];
    const auto hi = bytes_[pos_ + 1];
    pos_ += 2;
    return HidingVector{static_cast<std::uint16_t>(lo | (hi << 8))};
  }

  std::size_t vectors_remaining() const noexcept { return (bytes_.size() - pos_) / 2; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

/// Runtime choice between the two vector sources.
class AnySource {
 public:
  AnySource(LfsrSource s) : src_(s) {}
  AnySource(CoverSource s) : src_(s) {}

  HidingVector next() {
    return std::visit([](auto& s) { return s.next(); }, src_);
  }

  bool is_cover() const noexcept { return std::holds_alternative<CoverSource>(src_); }

 private:
  std::variant<LfsrSource, CoverSource> src_;
};

static_assert(VectorSource<LfsrSource>);
static_assert(VectorSource<CoverSource>);
static_assert(VectorSource<AnySource>);

}  // namespace mhhea
