// mhhea: command-line front end for the MHHEA codec, cycle model and bench.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "mhhea/mhhea.hpp"

namespace {

using namespace mhhea;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kIo = 3,
  kValidation = 4,
  kTruncated = 5,
};

int exit_code(Errc e) {
  if (is_parse_error(e)) return kParse;
  switch (e) {
    case Errc::Io: return kIo;
    case Errc::TruncatedCiphertext: return kTruncated;
    default: return kValidation;
  }
}

std::uint16_t parse_seed(const std::string& text) {
  std::string digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 4 || digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
    throw Error(Errc::InvalidSeed, "seed must be 1-4 hex digits, got '" + text + "'");
  const auto v = static_cast<std::uint16_t>(std::stoul(digits, nullptr, 16));
  if (v == 0) throw Error(Errc::InvalidSeed, "seed must be nonzero");
  return v;
}

struct SourceOpts {
  std::string seed;
  std::string cover;
};

// Owns cover bytes for the lifetime of the source built from them.
struct SourceHolder {
  std::vector<std::uint8_t> cover;
  std::optional<std::uint16_t> seed;

  AnySource make() const {
    if (seed) return LfsrSource(*seed);
    return CoverSource(cover);
  }
  bool cover_mode() const { return !seed; }
};

SourceHolder load_source(const SourceOpts& o) {
  SourceHolder h;
  if (!o.cover.empty()) {
    h.cover = io::read_file(o.cover);
  } else {
    h.seed = parse_seed(o.seed);
  }
  return h;
}

void add_source_opts(CLI::App* cmd, SourceOpts& o, bool required) {
  auto* seed = cmd->add_option("--seed", o.seed, "LFSR seed, 16-bit hex, nonzero (no default)");
  auto* cover = cmd->add_option("--cover", o.cover, "cover file supplying hiding vectors");
  seed->excludes(cover);
  if (required) {
    cmd->callback([seed, cover] {
      if (seed->count() == 0 && cover->count() == 0) throw CLI::ValidationError("one of --seed or --cover is required");
    });
  }
}

void print_stats(const char* label, const bench::PayloadStats& s) {
  std::cout << label << "\tmean_width\t" << s.mean_width << "\n";
  std::cout << label << "\texpansion_ratio\t" << s.expansion_ratio() << "\n";
  for (unsigned w = 1; w <= 8; ++w) std::cout << label << "\tp_width_" << w << "\t" << s.distribution[w] << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MHHEA hiding-vector cipher: codec, cycle model and benchmarks"};
  app.require_subcommand(1);

  std::size_t pairs = kDefaultPairs;
  std::string key_path, in_path, out_path, trace_path;
  double freq_mhz = bench::kPaperFrequencyMhz;
  SourceOpts src_opts;

  auto* keygen = app.add_subcommand("keygen", "write a random key file");
  keygen->add_option("--pairs", pairs, "number of key pairs L (default 16)");
  keygen->add_option("--out", out_path, "key file to write")->required();

  auto* enc = app.add_subcommand("encrypt", "encrypt a file into a cipher container");
  enc->add_option("--key", key_path)->required();
  enc->add_option("--in", in_path)->required();
  enc->add_option("--out", out_path)->required();
  add_source_opts(enc, src_opts, true);

  auto* dec = app.add_subcommand("decrypt", "recover plaintext from a cipher container");
  dec->add_option("--key", key_path)->required();
  dec->add_option("--in", in_path)->required();
  dec->add_option("--out", out_path)->required();

  auto* simc = app.add_subcommand("simulate", "run the cycle-level machine; writes the same container as encrypt");
  simc->add_option("--key", key_path)->required();
  simc->add_option("--in", in_path)->required();
  simc->add_option("--out", out_path)->required();
  simc->add_option("--trace", trace_path, "per-cycle CSV trace");
  add_source_opts(simc, src_opts, true);

  auto* benchc = app.add_subcommand("bench", "density table, payload statistics and throughput");
  benchc->add_option("--freq-mhz", freq_mhz, "clock frequency in MHz (default 23.883)");
  benchc->add_option("--key", key_path, "key for a measured throughput run");
  benchc->add_option("--in", in_path, "plaintext for a measured throughput run");
  add_source_opts(benchc, src_opts, false);

  auto* stats = app.add_subcommand("stats", "payload width statistics");
  stats->add_option("--key", key_path, "restrict statistics to this key's pairs");
  stats->add_option("--in", in_path, "cipher container to summarize (needs --key)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*keygen) {
      if (pairs == 0) {
        std::cerr << "error: --pairs must be at least 1\n";
        return kUsage;
      }
      std::random_device rd;
      std::mt19937_64 rng((static_cast<std::uint64_t>(rd()) << 32) | rd());
      io::write_key(out_path, generate_key(pairs, rng));
      return kOk;
    }

    if (*enc || *simc) {
      const KeyMatrix key = io::read_key(key_path);
      const auto plain = io::read_file(in_path);
      const SourceHolder holder = load_source(src_opts);
      io::CipherFile c;
      c.flags = holder.cover_mode() ? io::kFlagCover : 0;
      c.plaintext_bits = plain.size() * 8;
      if (*enc) {
        AnySource s = holder.make();
        c.vectors = encrypt(plain, key, s);
      } else {
        auto run = sim::simulate(plain, key, holder.make(), !trace_path.empty());
        c.vectors = std::move(run.vectors);
        if (!trace_path.empty()) {
          std::ofstream t(trace_path);
          if (!t) throw Error(Errc::Io, "cannot create " + trace_path);
          sim::write_trace_csv(t, run.trace);
          if (!t) throw Error(Errc::Io, "write failed: " + trace_path);
        }
        std::cout << "plaintext_bits\t" << c.plaintext_bits << "\n";
        std::cout << "vectors\t" << c.vectors.size() << "\n";
        std::cout << "total_cycles\t" << run.total_cycles << "\n";
        std::cout << "model_cycles\t" << sim::model_cycles(c.plaintext_bits, key.size(), c.vectors.size()) << "\n";
      }
      io::write_cipher(out_path, c);
      return kOk;
    }

    if (*dec) {
      const KeyMatrix key = io::read_key(key_path);
      const io::CipherFile c = io::read_cipher(in_path);
      io::write_file(out_path, decrypt(c.vectors, key, c.plaintext_bits));
      return kOk;
    }

    if (*benchc) {
      std::cout << "design\tthroughput_mbps\tarea_clb\tdensity\tprinted_density\n";
      for (const auto& r : bench::density_table())
        std::cout << r.name << '\t' << r.throughput_mbps << '\t' << r.area_clb << '\t' << r.density() << '\t'
                  << r.printed_density << '\n';
      std::cout << "\nmodel\tstat\tvalue\n";
      print_stats("no_wrap", bench::payload_stats(bench::WidthModel::NoWrapAnalytic));
      print_stats("full_scramble", bench::payload_stats(bench::WidthModel::FullScramble));

      std::optional<KeyMatrix> key;
      std::vector<std::uint8_t> plain;
      SourceHolder holder;
      holder.seed = 1;
      if (!in_path.empty()) {
        if (key_path.empty()) throw CLI::ValidationError("--in needs --key");
        key = io::read_key(key_path);
        plain = io::read_file(in_path);
        holder = load_source(src_opts);
      }
      const auto r = bench::throughput_report(plain, key ? *key : KeyMatrix({{0, 0}}), holder.make(), freq_mhz);
      std::cout << "\nmetric\tvalue\n";
      std::cout << "frequency_mhz\t" << r.frequency_mhz << "\n";
      std::cout << "max_payload_mbps\t" << r.max_payload_mbps << "\n";
      std::cout << "expectation_mbps\t" << r.expectation_mbps << "\n";
      if (!r.empty) {
        std::cout << "info_bits\t" << r.info_bits << "\n";
        std::cout << "vectors\t" << r.vectors << "\n";
        std::cout << "measured_cycles\t" << r.measured_cycles << "\n";
        std::cout << "model_cycles\t" << r.model_cycles << "\n";
        std::cout << "bits_per_cycle\t" << r.bits_per_cycle << "\n";
        std::cout << "model_bits_per_cycle\t" << r.model_bits_per_cycle << "\n";
        std::cout << "encrypt_bits_per_cycle\t" << r.encrypt_bits_per_cycle << "\n";
        std::cout << "measured_mbps\t" << r.mbps << "\n";
        std::cout << "encrypt_phase_mbps\t" << r.encrypt_mbps << "\n";
      }
      return kOk;
    }

    if (*stats) {
      std::optional<KeyMatrix> key;
      if (!key_path.empty()) key = io::read_key(key_path);
      std::cout << "model\tstat\tvalue\n";
      const auto pairs_view = key ? key->pairs() : std::span<const KeyPair>{};
      print_stats("no_wrap", bench::payload_stats(bench::WidthModel::NoWrapAnalytic, pairs_view));
      print_stats("full_scramble", bench::payload_stats(bench::WidthModel::FullScramble, pairs_view));
      if (!in_path.empty()) {
        if (!key) throw CLI::ValidationError("--in needs --key");
        const io::CipherFile c = io::read_cipher(in_path);
        std::vector<std::uint8_t> highs;
        for (auto v : c.vectors) highs.push_back(v.high());
        const auto schedule = payload_schedule(*key, highs, c.plaintext_bits);
        std::uint64_t carried = 0;
        for (auto w : schedule) carried += w;
        if (carried < c.plaintext_bits) throw Error(Errc::TruncatedCiphertext, "container carries too few bits");
        std::cout << "container\tvectors\t" << c.vectors.size() << "\n";
        std::cout << "container\tplaintext_bits\t" << c.plaintext_bits << "\n";
        std::cout << "container\tcover_mode\t" << (c.cover_mode() ? 1 : 0) << "\n";
        if (!schedule.empty())
          std::cout << "container\tmean_width\t" << double(carried) / double(schedule.size()) << "\n";
        if (c.plaintext_bits > 0)
          std::cout << "container\texpansion_ratio\t" << 16.0 * double(c.vectors.size()) / double(c.plaintext_bits)
                    << "\n";
      }
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return kUsage;
}
