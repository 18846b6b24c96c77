#pragma once

#include <stdexcept>
#include <string>

namespace mhhea {

/// Failure categories raised by the library. Each container parse failure has
/// its own code so callers (and the CLI exit status) can tell them apart.
enum class Errc {
  InvalidKey,
  InvalidSeed,
  CoverTooSmall,
  TruncatedCiphertext,
  MachineHalted,
  ZeroCycles,
  Io,
  // key file
  KeyBadMagic,
  KeyEmpty,
  KeyTruncated,
  KeyTrailingData,
  KeyReservedBits,
  // cipher file
  CipherBadMagic,
  CipherBadVersion,
  CipherReservedFlags,
  CipherTruncatedHeader,
  CipherTruncatedPayload,
};

constexpr const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::InvalidKey: return "invalid-key";
    case Errc::InvalidSeed: return "invalid-seed";
    case Errc::CoverTooSmall: return "cover-too-small";
    case Errc::TruncatedCiphertext: return "truncated-ciphertext";
    case Errc::MachineHalted: return "machine-halted";
    case Errc::ZeroCycles: return "zero-cycles";
    case Errc::Io: return "io";
    case Errc::KeyBadMagic: return "key-bad-magic";
    case Errc::KeyEmpty: return "key-empty";
    case Errc::KeyTruncated: return "key-truncated";
    case Errc::KeyTrailingData: return "key-trailing-data";
    case Errc::KeyReservedBits: return "key-reserved-bits";
    case Errc::CipherBadMagic: return "cipher-bad-magic";
    case Errc::CipherBadVersion: return "cipher-bad-version";
    case Errc::CipherReservedFlags: return "cipher-reserved-flags";
    case Errc::CipherTruncatedHeader: return "cipher-truncated-header";
    case Errc::CipherTruncatedPayload: return "cipher-truncated-payload";
  }
  return "unknown";
}

constexpr bool is_parse_error(Errc e) noexcept {
  return e >= Errc::KeyBadMagic;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mhhea
