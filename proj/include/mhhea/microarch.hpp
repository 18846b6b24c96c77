#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "mhhea/cipher.hpp"
#include "mhhea/error.hpp"
#include "mhhea/lfsr.hpp"
#include "mhhea/types.hpp"

namespace mhhea::sim {

enum class FsmState : std::uint8_t { Init, LMsg, LKey, LMsgCache, Circ, Encrypt };

constexpr std::string_view state_name(FsmState s) noexcept {
  switch (s) {
    case FsmState::Init: return "INIT";
    case FsmState::LMsg: return "LMSG";
    case FsmState::LKey: return "LKEY";
    case FsmState::LMsgCache: return "LMSGCACHE";
    case FsmState::Circ: return "CIRC";
    case FsmState::Encrypt: return "ENCRYPT";
  }
  return "?";
}

/// Transition relation of the control unit. INIT -> LKEY is only taken when
/// there is no plaintext to load.
constexpr bool legal_transition(FsmState from, FsmState to) noexcept {
  using enum FsmState;
  switch (from) {
    case Init: return to == LMsg || to == LKey;
    case LMsg: return to == LKey || to == LMsgCache;
    case LKey: return to == LKey || to == LMsgCache;
    case LMsgCache: return to == Circ;
    case Circ: return to == Encrypt;
    case Encrypt: return to == Circ || to == LMsgCache || to == LMsg;
  }
  return false;
}

/// Cycles charged per state visit. Only CIRC and ENCRYPT costs are fixed by
/// the hardware description; the load costs are the simplest register-transfer
/// values and live here so they can be changed in one place.
struct CycleCosts {
  static constexpr std::uint64_t lmsg = 1;           // per 32-bit word
  static constexpr std::uint64_t lkey_per_pair = 1;  // once per run
  static constexpr std::uint64_t lmsgcache = 1;      // per 16-bit block
  static constexpr std::uint64_t per_pair = 2;       // CIRC + ENCRYPT
};

/// Closed-form cycle count for a run that emits `vectors` hiding vectors.
constexpr std::uint64_t model_cycles(std::uint64_t plaintext_bits, std::size_t key_pairs,
                                     std::uint64_t vectors) noexcept {
  const std::uint64_t words = (plaintext_bits + kWordBits - 1) / kWordBits;
  const std::uint64_t blocks = (plaintext_bits + kBlockBits - 1) / kBlockBits;
  return words * CycleCosts::lmsg + key_pairs * CycleCosts::lkey_per_pair + blocks * CycleCosts::lmsgcache +
         vectors * CycleCosts::per_pair;
}

/// Mbps for `info_bits` delivered over `total_cycles` at `frequency_mhz`.
inline double throughput(std::uint64_t total_cycles, double info_bits, double frequency_mhz) {
  if (total_cycles == 0) throw Error(Errc::ZeroCycles, "throughput over zero cycles is undefined");
  return info_bits / static_cast<double>(total_cycles) * frequency_mhz;
}

struct CycleTraceRow {
  std::uint64_t cycle = 0;
  FsmState state = FsmState::Init;
  std::size_t key_index = 0;
  std::uint8_t kn1 = 0;
  std::uint8_t kn2 = 0;
  std::uint16_t align_buf = 0;
  std::uint16_t out = 0;
  bool ready = false;
};

inline constexpr std::string_view kTraceHeader = "cycle,state,key_index,kn1,kn2,align_buf,out,ready";

void write_trace_row(std::ostream& os, const CycleTraceRow& r);

inline void write_trace_csv(std::ostream& os, std::span<const CycleTraceRow> rows) {
  os << kTraceHeader << '\n';
  for (const auto& r : rows) write_trace_row(os, r);
}

inline void write_trace_row(std::ostream& os, const CycleTraceRow& r) {
  static constexpr char hex[] = "0123456789ABCDEF";
  auto hex4 = [&](std::uint16_t v) {
    for (int s = 12; s >= 0; s -= 4) os << hex[(v >> s) & 0xF];
  };
  os << r.cycle << ',' << state_name(r.state) << ',' << r.key_index << ',' << unsigned(r.kn1) << ','
     << unsigned(r.kn2) << ',';
  hex4(r.align_buf);
  os << ',';
  hex4(r.out);
  os << ',' << (r.ready ? 1 : 0) << '\n';
}

/// Register file of the datapath.
struct MachineRegs {
  std::array<std::uint16_t, 2> msg_cache{};  // low half, high half of the 32-bit word
  std::uint16_t align_buf = 0;
  std::vector<std::uint8_t> key_cache;       // 2*L three-bit registers, pair p at [2p], [2p+1]
  HidingVector vector{};                     // hiding vector register (LFSR / cover output)
  ScrambledPair kn{};                        // comparator output latched at CIRC
  std::uint16_t out_reg = 0;
  bool ready = false;
};

struct RunResult {
  std::vector<HidingVector> vectors;
  std::uint64_t total_cycles = 0;
  std::vector<CycleTraceRow> trace;
};

/// Cycle-level model of the MHHEA datapath: message cache, message alignment
/// barrel rotator, key cache, comparator, encryption mux and vector generator,
/// sequenced by the six-state control FSM. One call to step() is one clock.
class Machine {
 public:
  /// Latches Go: the machine sits in INIT and the first step leaves it.
  /// The plaintext bytes must outlive the machine.
  Machine(std::span<const std::uint8_t> plaintext, KeyMatrix key, AnySource source, bool record_trace = true)
      : Machine(plaintext, plaintext.size() * 8, std::move(key), std::move(source), record_trace) {}

  Machine(std::span<const std::uint8_t> plaintext, std::uint64_t total_bits, KeyMatrix key, AnySource source,
          bool record_trace = true)
      : stream_(plaintext, total_bits), key_(std::move(key)), source_(std::move(source)), trace_on_(record_trace) {
    regs_.key_cache.assign(2 * key_.size(), 0);
    if (!stream_.exhausted()) regs_.vector = source_.next();
  }

  FsmState state() const noexcept { return state_; }
  bool halted() const noexcept { return halted_; }
  std::uint64_t cycles() const noexcept { return cycle_; }
  std::size_t key_index() const noexcept { return key_index_; }
  const MachineRegs& regs() const noexcept { return regs_; }
  std::uint32_t msg_word() const noexcept {
    return regs_.msg_cache[0] | (static_cast<std::uint32_t>(regs_.msg_cache[1]) << 16);
  }
  const std::vector<HidingVector>& emitted() const noexcept { return emitted_; }
  const std::vector<CycleTraceRow>& trace() const noexcept { return trace_; }

  /// Advances one clock cycle.
  void step() {
    if (halted_) throw Error(Errc::MachineHalted, "step on halted machine");
    const FsmState next = next_state();
    regs_.ready = false;
    std::size_t shown_index = key_index_;
    switch (next) {
      case FsmState::Init: break;  // unreachable: INIT is never re-entered
      case FsmState::LMsg: do_lmsg(); break;
      case FsmState::LKey: do_lkey(); break;
      case FsmState::LMsgCache: do_lmsgcache(); break;
      case FsmState::Circ: do_circ(); break;
      case FsmState::Encrypt: do_encrypt(); break;
    }
    state_ = next;
    ++cycle_;
    if (trace_on_) {
      trace_.push_back({cycle_, state_, shown_index, regs_.kn.kn1, regs_.kn.kn2, regs_.align_buf, regs_.out_reg,
                        regs_.ready});
    }
    halted_ = done();
  }

  RunResult run() && {
    while (!halted_) step();
    return {std::move(emitted_), cycle_, std::move(trace_)};
  }

 private:
  FsmState next_state() const noexcept {
    using enum FsmState;
    switch (state_) {
      case Init: return stream_.total_bits() == 0 ? LKey : LMsg;
      case LMsg: return keys_loaded_ < key_.size() ? LKey : LMsgCache;
      case LKey: return keys_loaded_ < key_.size() ? LKey : LMsgCache;
      case LMsgCache: return Circ;
      case Circ: return Encrypt;
      case Encrypt:
        if (stream_.cursor() % kBlockBits != 0) return Circ;
        return stream_.cursor() % kWordBits != 0 ? LMsgCache : LMsg;
    }
    return Init;
  }

  bool done() const noexcept {
    switch (state_) {
      case FsmState::LKey: return keys_loaded_ == key_.size() && stream_.total_bits() == 0;
      case FsmState::Encrypt: return stream_.exhausted();
      default: return false;
    }
  }

  // Loads the next 32-bit word; bits past the end of the plaintext read as 0.
  void do_lmsg() {
    const std::uint64_t base = stream_.cursor();
    std::uint32_t word = 0;
    for (unsigned b = 0; b < kWordBits && base + b < stream_.total_bits(); ++b)
      word |= static_cast<std::uint32_t>(stream_.bit_at(base + b)) << b;
    regs_.msg_cache = {static_cast<std::uint16_t>(word), static_cast<std::uint16_t>(word >> 16)};
  }

  void do_lkey() {
    const KeyPair p = key_[keys_loaded_];
    regs_.key_cache[2 * keys_loaded_] = p.k1;
    regs_.key_cache[2 * keys_loaded_ + 1] = p.k2;
    ++keys_loaded_;
  }

  void do_lmsgcache() {
    const unsigned half = (stream_.cursor() % kWordBits) / kBlockBits;
    regs_.align_buf = regs_.msg_cache[half];
  }

  // Comparator sorts the addressed pair, scrambles it against the current
  // vector, and the smaller location drives the left rotation.
  void do_circ() {
    const KeyPair k = normalize_pair({regs_.key_cache[2 * key_index_], regs_.key_cache[2 * key_index_ + 1]});
    regs_.kn = scramble_key(k, regs_.vector);
    regs_.align_buf = rotl16(regs_.align_buf, regs_.kn.kn1);
  }

  // Fixed-wire mux: vector bit j takes message bit j for kn1 <= j < kn1 + n.
  // Rotating right by kn1 + n leaves the unconsumed bits at the LSB end;
  // for a full pair that is kn2 + 1.
  void do_encrypt() {
    const ScrambledPair kn = regs_.kn;
    const std::uint8_t k1 = regs_.key_cache[2 * key_index_] < regs_.key_cache[2 * key_index_ + 1]
                                ? regs_.key_cache[2 * key_index_]
                                : regs_.key_cache[2 * key_index_ + 1];
    const unsigned n = embed_budget(kn, stream_.cursor(), stream_.total_bits());
    std::uint16_t out = regs_.vector.bits;
    for (unsigned t = 0; t < n; ++t) {
      const unsigned j = kn.kn1 + t;
      const unsigned b = ((regs_.align_buf >> j) & 1u) ^ key_bit(k1, t);
      out = static_cast<std::uint16_t>((out & ~(1u << j)) | (b << j));
    }
    regs_.out_reg = out;
    regs_.ready = true;
    emitted_.push_back(HidingVector{out});
    regs_.align_buf = rotr16(regs_.align_buf, kn.kn1 + n);
    stream_.advance(n);
    key_index_ = (key_index_ + 1) % key_.size();
    if (!stream_.exhausted()) regs_.vector = source_.next();
  }

  PlainBitStream stream_;
  KeyMatrix key_;
  AnySource source_;
  bool trace_on_;
  MachineRegs regs_;
  FsmState state_ = FsmState::Init;
  bool halted_ = false;
  std::uint64_t cycle_ = 0;
  std::size_t keys_loaded_ = 0;
  std::size_t key_index_ = 0;
  std::vector<HidingVector> emitted_;
  std::vector<CycleTraceRow> trace_;
};

inline RunResult simulate(std::span<const std::uint8_t> plaintext, const KeyMatrix& key, AnySource source,
                          bool record_trace = true) {
  return Machine(plaintext, key, std::move(source), record_trace).run();
}

}  // namespace mhhea::sim
