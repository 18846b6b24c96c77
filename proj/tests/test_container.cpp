#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <vector>

#include "mhhea/container.hpp"

using namespace mhhea;
using Bytes = std::vector<std::uint8_t>;

namespace {

Errc key_error(const Bytes& b) {
  try {
    io::decode_key(b);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode_key accepted input";
  return Errc::Io;
}

Errc cipher_error(const Bytes& b) {
  try {
    io::decode_cipher(b);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode_cipher accepted input";
  return Errc::Io;
}

}  // namespace

TEST(KeyFile, SinglePairLayout) {
  EXPECT_EQ(io::encode_key(KeyMatrix({{0, 3}})), (Bytes{0x4D, 0x48, 0x4B, 0x31, 0x01, 0x00, 0x18}));
}

TEST(KeyFile, DefaultSizeIs22Bytes) {
  std::mt19937 rng(1);
  EXPECT_EQ(io::encode_key(generate_key(16, rng)).size(), 22u);
}

TEST(KeyFile, RoundTripProperty) {
  std::mt19937 rng(2);
  for (int c = 0; c < 100; ++c) {
    const KeyMatrix k = generate_key(1 + rng() % 300, rng);
    ASSERT_EQ(io::decode_key(io::encode_key(k)), k);
  }
}

TEST(KeyFile, ParseErrors) {
  EXPECT_EQ(key_error({0x4D, 0x48, 0x4B, 0x31, 0x01, 0x00, 0x98}), Errc::KeyReservedBits);
  EXPECT_EQ(key_error({0x4D, 0x48, 0x4B, 0x31, 0x01, 0x00, 0x58}), Errc::KeyReservedBits);
  EXPECT_EQ(key_error({'M', 'H', 'K', '2', 0x01, 0x00, 0x18}), Errc::KeyBadMagic);
  EXPECT_EQ(key_error({'M', 'H', 'K', '1', 0x00, 0x00}), Errc::KeyEmpty);
  EXPECT_EQ(key_error({'M', 'H', 'K', '1', 0x02, 0x00, 0x18}), Errc::KeyTruncated);
  EXPECT_EQ(key_error({'M', 'H', 'K'}), Errc::KeyTruncated);
  EXPECT_EQ(key_error({'M', 'H', 'K', '1', 0x01, 0x00, 0x18, 0x00}), Errc::KeyTrailingData);
}

TEST(CipherFile, PayloadLittleEndian) {
  io::CipherFile c{0, 4, {HidingVector{0xCA02}}};
  const Bytes b = io::encode_cipher(c);
  ASSERT_EQ(b.size(), 16u);
  EXPECT_EQ(b[14], 0x02);
  EXPECT_EQ(b[15], 0xCA);
  EXPECT_EQ(b[6], 4);
  EXPECT_EQ(io::decode_cipher(b), c);
}

TEST(CipherFile, EmptyIsValid) {
  const io::CipherFile c{};
  const Bytes b = io::encode_cipher(c);
  EXPECT_EQ(b.size(), io::kCipherHeaderSize);
  const auto d = io::decode_cipher(b);
  EXPECT_EQ(d.plaintext_bits, 0u);
  EXPECT_TRUE(d.vectors.empty());
}

TEST(CipherFile, RoundTripProperty) {
  std::mt19937_64 rng(3);
  for (int c = 0; c < 50; ++c) {
    io::CipherFile f;
    f.flags = rng() & 1;
    f.plaintext_bits = rng();
    f.vectors.resize(rng() % 100);
    for (auto& v : f.vectors) v.bits = static_cast<std::uint16_t>(rng());
    ASSERT_EQ(io::decode_cipher(io::encode_cipher(f)), f);
  }
}

TEST(CipherFile, ParseErrors) {
  Bytes good = io::encode_cipher({io::kFlagCover, 4, {HidingVector{0xCA02}}});
  EXPECT_TRUE(io::decode_cipher(good).cover_mode());

  Bytes odd = good;
  odd.pop_back();
  EXPECT_EQ(cipher_error(odd), Errc::CipherTruncatedPayload);

  Bytes magic = good;
  magic[3] = '0';
  EXPECT_EQ(cipher_error(magic), Errc::CipherBadMagic);

  Bytes version = good;
  version[4] = 2;
  EXPECT_EQ(cipher_error(version), Errc::CipherBadVersion);

  Bytes flags = good;
  flags[5] = 0x80;
  EXPECT_EQ(cipher_error(flags), Errc::CipherReservedFlags);

  EXPECT_EQ(cipher_error(Bytes(good.begin(), good.begin() + 10)), Errc::CipherTruncatedHeader);
}

TEST(Files, WriteReadAndMissingPath) {
  const auto dir = std::filesystem::temp_directory_path() / "mhhea_container_test";
  std::filesystem::create_directories(dir);
  const KeyMatrix k({{1, 2}, {7, 0}});
  io::write_key(dir / "k.mhk", k);
  EXPECT_EQ(io::read_key(dir / "k.mhk"), k);
  const io::CipherFile c{0, 9, {HidingVector{1}, HidingVector{2}}};
  io::write_cipher(dir / "c.mhc", c);
  EXPECT_EQ(io::read_cipher(dir / "c.mhc"), c);
  try {
    io::read_key(dir / "missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Io);
  }
  std::filesystem::remove_all(dir);
}
