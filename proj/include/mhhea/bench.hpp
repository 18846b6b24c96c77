#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mhhea/cipher.hpp"
#include "mhhea/lfsr.hpp"
#include "mhhea/microarch.hpp"
#include "mhhea/types.hpp"

namespace mhhea::bench {

struct FunctionalDensityRow {
  std::string name;
  double throughput_mbps = 0;
  double area_clb = 0;
  double printed_density = 0;  // as published, for comparison

  double density() const noexcept { return throughput_mbps / area_clb; }
};

/// Published FPGA comparison: throughput, area and printed density per design.
inline std::vector<FunctionalDensityRow> density_table() {
  return {
      {"YAEA (XC4005xL)", 129.1, 149, 0.866},
      {"HHEA", 15.8, 144, 0.110},
      {"MHHEA", 95.532, 168, 0.569},
  };
}

enum class WidthModel {
  NoWrapAnalytic,  // width = |k1 - k2| + 1 over all 64 ordered pairs
  FullScramble,    // realized scrambled width over 64 pairs x 256 high bytes
};

struct PayloadStats {
  double mean_width = 0;
  std::array<double, 9> distribution{};  // index = width 1..8; [0] unused

  double expansion_ratio() const noexcept { return kVectorBits / mean_width; }
};

namespace detail {
inline PayloadStats finish(const std::array<std::uint64_t, 9>& counts) {
  std::uint64_t total = 0, weighted = 0;
  for (unsigned w = 1; w <= 8; ++w) {
    total += counts[w];
    weighted += w * counts[w];
  }
  PayloadStats s;
  s.mean_width = static_cast<double>(weighted) / static_cast<double>(total);
  for (unsigned w = 1; w <= 8; ++w) s.distribution[w] = static_cast<double>(counts[w]) / static_cast<double>(total);
  return s;
}
}  // namespace detail

/// Width statistics over `pairs` (all 64 ordered pairs when empty).
inline PayloadStats payload_stats(WidthModel model, std::span<const KeyPair> pairs = {}) {
  std::vector<KeyPair> all;
  if (pairs.empty()) {
    for (std::uint8_t a = 0; a < 8; ++a)
      for (std::uint8_t b = 0; b < 8; ++b) all.push_back({a, b});
    pairs = all;
  }
  std::array<std::uint64_t, 9> counts{};
  for (const KeyPair raw : pairs) {
    const KeyPair k = normalize_pair(raw);
    if (model == WidthModel::NoWrapAnalytic) {
      ++counts[k.k2 - k.k1 + 1];
      continue;
    }
    for (unsigned high = 0; high < 256; ++high)
      ++counts[scramble_key(k, HidingVector{static_cast<std::uint16_t>(high << 8)}).width()];
  }
  return detail::finish(counts);
}

inline constexpr double kPaperFrequencyMhz = 23.883;
inline constexpr double kPaperMhheaMbps = 95.532;
inline constexpr unsigned kMaxPayloadBits = 8;

struct ThroughputReport {
  bool empty = true;
  std::uint64_t info_bits = 0;
  std::uint64_t vectors = 0;
  std::uint64_t measured_cycles = 0;
  std::uint64_t model_cycles = 0;
  double frequency_mhz = 0;
  double bits_per_cycle = 0;          // whole run, measured
  double model_bits_per_cycle = 0;    // whole run, closed form
  double encrypt_bits_per_cycle = 0;  // CIRC+ENCRYPT phase only
  double mbps = 0;                    // whole run
  double encrypt_mbps = 0;            // encrypt phase only
  double expectation_mbps = 0;        // mean scrambled width per two-cycle pair
  double max_payload_mbps = 0;        // 8 bits per two-cycle pair
};

/// Runs the simulator and reports measured and model throughput.
inline ThroughputReport throughput_report(std::span<const std::uint8_t> plaintext, const KeyMatrix& key,
                                          AnySource source, double frequency_mhz) {
  ThroughputReport r;
  r.frequency_mhz = frequency_mhz;
  r.expectation_mbps =
      sim::throughput(sim::CycleCosts::per_pair, payload_stats(WidthModel::FullScramble).mean_width, frequency_mhz);
  r.max_payload_mbps = sim::throughput(sim::CycleCosts::per_pair, kMaxPayloadBits, frequency_mhz);
  if (plaintext.empty()) return r;
  const auto run = sim::simulate(plaintext, key, std::move(source), false);
  r.empty = false;
  r.info_bits = plaintext.size() * 8;
  r.vectors = run.vectors.size();
  r.measured_cycles = run.total_cycles;
  r.model_cycles = sim::model_cycles(r.info_bits, key.size(), r.vectors);
  const double bits = static_cast<double>(r.info_bits);
  r.bits_per_cycle = bits / static_cast<double>(r.measured_cycles);
  r.model_bits_per_cycle = bits / static_cast<double>(r.model_cycles);
  r.encrypt_bits_per_cycle = bits / static_cast<double>(sim::CycleCosts::per_pair * r.vectors);
  r.mbps = sim::throughput(r.measured_cycles, bits, frequency_mhz);
  r.encrypt_mbps = sim::throughput(sim::CycleCosts::per_pair * r.vectors, bits, frequency_mhz);
  return r;
}

}  // namespace mhhea::bench
