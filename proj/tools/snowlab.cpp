// snowlab: keystream generation, file encryption, vector checks and analysis runs.
//
// Exit codes: 0 success, 1 failed check, 2 bad arguments or input syntax,
// 3 keystream budget exhausted, 4 I/O error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "snowlab/analysis/bias.hpp"
#include "snowlab/analysis/fault.hpp"
#include "snowlab/analysis/golomb.hpp"
#include "snowlab/analysis/guess_determine.hpp"
#include "snowlab/analysis/linear_complexity.hpp"
#include "snowlab/analysis/relations.hpp"
#include "snowlab/analysis/report.hpp"
#include "snowlab/errors.hpp"
#include "snowlab/hex.hpp"
#include "snowlab/mini_snow.hpp"
#include "snowlab/sbox.hpp"
#include "snowlab/snow1.hpp"
#include "snowlab/snow2.hpp"
#include "snowlab/snow3g.hpp"
#include "snowlab/vectors.hpp"

namespace fs = std::filesystem;
using namespace snowlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

constexpr std::uint64_t kDefaultSeed = 1;

class IoError : public Error {
 public:
  using Error::Error;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used, 0);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("bad " + what + " '" + text + "'");
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_u64(*flag, "seed");
  if (const char* env = std::getenv("SNOWLAB_SEED"); env != nullptr && *env != '\0') {
    return parse_u64(env, "SNOWLAB_SEED");
  }
  return kDefaultSeed;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

int emit(const Json& report) {
  std::cout << dump_report(report) << '\n';
  return report.at("pass").get<bool>() ? kExitOk : kExitFail;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

// ---------------------------------------------------------------- ciphers

struct CipherArgs {
  std::string cipher;
  std::string key;
  std::string iv;
  std::uint64_t limit = kSnow2DefaultLimit;
};

void add_cipher_options(CLI::App* cmd, CipherArgs& args) {
  cmd->add_option("--cipher", args.cipher, "snow1, snow2 or snow3g")->required();
  cmd->add_option("--key", args.key, "key as hex (256 bits for snow1/snow2, 128 for snow3g)")->required();
  cmd->add_option("--iv", args.iv, "IV as hex (64 bits for snow1, 128 otherwise)")->required();
  cmd->add_option("--limit", args.limit, "snow2 keystream budget in words");
}

KeystreamGenerator make_generator(const CipherArgs& args, CipherId& id) {
  id = parse_cipher(args.cipher);
  const auto key = parse_hex_words(args.key, key_words(id));
  const auto iv = parse_hex_words(args.iv, iv_words(id));
  return KeystreamGenerator(id, key, iv, args.limit);
}

void check_budget(CipherId id, const CipherArgs& args, std::uint64_t words) {
  if (id == CipherId::kSnow2 && words > args.limit) throw BudgetExhausted(args.limit);
}

int cmd_keystream(const CipherArgs& args, std::uint64_t count, std::uint64_t discard, const std::string& format) {
  if (format != "hex" && format != "binary") throw InvalidArgument("format must be hex or binary");
  CipherId id{};
  KeystreamGenerator gen = make_generator(args, id);
  if (discard > ~std::uint64_t{0} - count) throw InvalidArgument("discard + count overflows");
  check_budget(id, args, discard + count);
  gen.skip(discard);

  constexpr std::uint64_t kChunk = 1 << 14;
  std::string buffer;
  for (std::uint64_t done = 0; done < count;) {
    const auto n = static_cast<std::size_t>(std::min(kChunk, count - done));
    const std::vector<Word> words = gen.take(n);
    buffer.clear();
    for (Word w : words) {
      if (format == "hex") {
        buffer += format_word(w);
        buffer += '\n';
      } else {
        for (int b = 0; b < 4; ++b) buffer += static_cast<char>(byte_at(w, b));
      }
    }
    std::cout.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    done += n;
  }
  std::cout.flush();
  if (!std::cout) throw IoError("write to stdout failed");
  return kExitOk;
}

int cmd_crypt(const CipherArgs& args, const std::string& in_path, const std::string& out_path) {
  CipherId id{};
  KeystreamGenerator gen = make_generator(args, id);
  std::error_code ec;
  const auto size = fs::file_size(in_path, ec);
  if (ec) throw IoError("cannot read '" + in_path + "': " + ec.message());
  check_budget(id, args, (size + 3) / 4);

  std::ifstream in = open_input(in_path);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");

  // Chunks are whole words, so only the final read can end mid-word.
  std::vector<char> buffer(1 << 20);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got == 0) break;
    const std::vector<Word> ks = gen.take((got + 3) / 4);
    for (std::size_t i = 0; i < got; ++i) {
      buffer[i] = static_cast<char>(static_cast<Byte>(buffer[i]) ^ byte_at(ks[i / 4], static_cast<int>(i % 4)));
    }
    out.write(buffer.data(), static_cast<std::streamsize>(got));
    if (!out) throw IoError("write to '" + out_path + "' failed");
  }
  if (in.bad()) throw IoError("read from '" + in_path + "' failed");
  out.close();
  if (!out) throw IoError("closing '" + out_path + "' failed");
  return kExitOk;
}

int cmd_vectors(const std::string& path) {
  std::ifstream in = open_input(path);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<VectorEntry> entries = read_vector_file(in);

  Json report;
  report["schema"] = kReportSchema;
  report["tool_version"] = kToolVersion;
  report["command"] = {{"name", "vectors"}, {"path", path}};
  report["seed"] = nullptr;
  Json cases = Json::array();
  std::size_t passed = 0;
  for (const VectorEntry& e : entries) {
    const VectorOutcome outcome = run_vector(e);
    Json c;
    c["line"] = e.line;
    c["cipher"] = cipher_name(e.cipher);
    c["words"] = e.expected.size();
    c["pass"] = outcome.pass;
    if (!outcome.pass) {
      c["expected"] = format_words(e.expected);
      c["actual"] = format_words(outcome.actual);
    }
    passed += outcome.pass;
    cases.push_back(std::move(c));
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["cases"] = std::move(cases);
  report["passed"] = passed;
  report["failed"] = entries.size() - passed;
  report["timing_ms"] = ms;
  report["pass"] = passed == entries.size();
  return emit(report);
}

// ---------------------------------------------------------------- analysis

struct AnalysisArgs {
  std::optional<std::string> seed;
  unsigned workers = 0;
};

void add_common(CLI::App* cmd, AnalysisArgs& args, bool seeded) {
  if (seeded) cmd->add_option("--seed", args.seed, "64-bit seed (default: $SNOWLAB_SEED, else 1)");
  cmd->add_option("--workers", args.workers, "worker threads (0 = hardware concurrency)");
}

ByteSBox sbox_by_name(const std::string& name) {
  if (name == "aes") return aes_sbox();
  if (name == "inversion") return inversion_sbox(Gf8Modulus::snow2());
  if (name == "inversion-aes") return inversion_sbox(Gf8Modulus::aes());
  if (name == "sq") return snow3g_sq_sbox();
  if (name == "snow1") return snow1_byte_sbox();
  if (name == "identity") return ByteSBox::identity();
  if (fs::is_regular_file(name)) return load_sbox_file(name);
  throw InvalidArgument("unknown S-box '" + name + "' (aes, inversion, inversion-aes, sq, snow1, identity or a file)");
}

std::vector<Bit> read_bits(const std::string& path, bool ascii) {
  std::ifstream in = open_input(path);
  std::vector<Bit> bits;
  char c = 0;
  while (in.get(c)) {
    if (ascii) {
      if (c == '0' || c == '1') {
        bits.push_back(static_cast<Bit>(c - '0'));
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw InvalidArgument("ascii bit files may contain only 0, 1 and whitespace");
      }
    } else {
      for (int b = 7; b >= 0; --b) bits.push_back(static_cast<Bit>((static_cast<unsigned char>(c) >> b) & 1));
    }
  }
  if (in.bad()) throw IoError("read from '" + path + "' failed");
  return bits;
}

std::string bit_string(const std::vector<Bit>& bits) {
  std::string s;
  for (Bit b : bits) s += static_cast<char>('0' + b);
  return s;
}

struct BitSource {
  std::string input;
  bool ascii = false;
  int mseq = 0;
};

void add_bit_source(CLI::App* cmd, BitSource& src) {
  auto* input = cmd->add_option("--input", src.input, "bit file (bytes, most significant bit first)");
  cmd->add_flag("--ascii", src.ascii, "the input file holds 0/1 characters");
  auto* mseq = cmd->add_option("--mseq", src.mseq, "use the built-in m-sequence of this degree (2..24)");
  input->excludes(mseq);
  mseq->excludes(input);
}

int cmd_bm(const BitSource& src, std::size_t bits_wanted, std::size_t check) {
  Json params;
  std::vector<Bit> bits;
  if (src.mseq > 0) {
    const std::size_t n = bits_wanted > 0 ? bits_wanted : 2 * static_cast<std::size_t>(src.mseq);
    bits = m_sequence(src.mseq, n);
    params = {{"mseq", src.mseq}, {"bits", n}, {"check", check}};
  } else if (!src.input.empty()) {
    bits = read_bits(src.input, src.ascii);
    if (bits_wanted > 0 && bits_wanted < bits.size()) bits.resize(bits_wanted);
    params = {{"input", src.input}, {"bits", bits.size()}};
  } else {
    throw InvalidArgument("bm needs --input or --mseq");
  }
  const LinearComplexityResult r = berlekamp_massey(bits);
  const std::vector<Bit> fill(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(r.L));
  const bool regenerates = lfsr_sequence(r.connection, fill, bits.size()) == bits;

  Json report = make_report("bm", params, 0);
  report["seed"] = nullptr;
  report["samples"] = bits.size();
  report["L"] = r.L;
  report["connection"] = bit_string(r.connection);
  if (bits.size() <= 256) report["profile"] = r.profile;
  report["regenerates"] = regenerates;
  bool pass = regenerates;
  if (src.mseq > 0) {
    const bool generator = r.connection == primitive_connection(src.mseq);
    const std::size_t total = bits.size() + check;
    const bool extended = lfsr_sequence(r.connection, fill, total) == m_sequence(src.mseq, total);
    report["generator_recovered"] = generator;
    report["extension_matches"] = extended;
    pass = pass && generator && extended;
  }
  report["pass"] = pass;
  return emit(report);
}

int cmd_golomb(const BitSource& src, std::size_t period) {
  Json params;
  std::vector<Bit> bits;
  if (src.mseq > 0) {
    const std::size_t full = (std::size_t{1} << src.mseq) - 1;
    if (period == 0) period = full;
    bits = m_sequence(src.mseq, period);
    params = {{"mseq", src.mseq}, {"period", period}};
  } else if (!src.input.empty()) {
    bits = read_bits(src.input, src.ascii);
    if (period == 0) period = bits.size();
    params = {{"input", src.input}, {"period", period}};
  } else {
    throw InvalidArgument("golomb needs --input or --mseq");
  }
  const GolombReport g = golomb_tests(bits, period);
  Json report = make_report("golomb", params, 0);
  report["seed"] = nullptr;
  report["samples"] = g.period;
  report["ones"] = g.ones;
  report["zeros"] = g.zeros;
  report["balanced"] = g.balanced;
  report["total_runs"] = g.total_runs;
  report["runs_of_ones"] = g.runs_of_ones;
  report["runs_of_zeros"] = g.runs_of_zeros;
  report["run_distribution"] = g.run_distribution;
  report["span_property"] = g.span_property;
  report["span"] = g.span;
  report["two_level"] = g.two_level;
  report["off_peak"] = g.off_peak;
  report["pass"] = g.pass();
  return emit(report);
}

int cmd_carry(int bit, std::uint64_t samples, const AnalysisArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed);
  const CarryBiasResult r = carry_bias(bit, samples, seed, resolve_workers(a.workers));
  Json report = make_report("carry", {{"i", bit}, {"samples", samples}}, seed);
  // Top-level estimate is Pr[c_i = 0] under the carry-into reading.
  report["samples"] = samples;
  report["estimate"] = r.into.probability();
  report["std_error"] = r.into.probability_std_error();
  report["formula"] = r.formula;
  report["into"] = bias_json(r.into);
  report["into"]["matches_formula"] = r.into_matches;
  report["out_of"] = bias_json(r.out_of);
  report["out_of"]["matches_formula"] = r.out_of_matches;
  report["convention"] = r.into_matches ? "carry into bit i" : (r.out_of_matches ? "carry out of bit i" : "none");
  report["pass"] = r.into_matches || r.out_of_matches;
  return emit(report);
}

int cmd_corr(const std::string& sbox_name, const std::string& t_text, const std::string& lambda_text) {
  const ByteSBox sbox = sbox_by_name(sbox_name);
  const MaskPair mask{static_cast<std::uint32_t>(parse_u64(t_text, "T mask")),
                      static_cast<std::uint32_t>(parse_u64(lambda_text, "lambda mask"))};
  if (mask.t > 0xFF || mask.lambda > 0xFF) throw InvalidArgument("masks are 8-bit for byte S-boxes");
  const auto f = [&](std::uint32_t x) -> std::uint32_t { return sbox(static_cast<Byte>(x)); };

  const double c = correlation_exhaustive(f, 8, mask);
  double parseval = 0.0;
  double best = 0.0;
  std::uint32_t best_lambda = 0;
  for (std::uint32_t l = 0; l < 256; ++l) {
    const double v = correlation_exhaustive(f, 8, {mask.t, l});
    parseval += v * v;
    if (std::abs(v) > std::abs(best)) {
      best = v;
      best_lambda = l;
    }
  }
  Json report = make_report("corr", {{"sbox", sbox.name()}, {"t", mask.t}, {"lambda", mask.lambda}}, 0);
  report["seed"] = nullptr;
  report["samples"] = 256;
  report["estimate"] = c;
  report["std_error"] = 0.0;
  report["parseval_sum"] = parseval;
  report["best_lambda"] = best_lambda;
  report["best_correlation"] = best;
  report["pass"] = mask.t == 0 || std::abs(parseval - 1.0) < 1e-9;
  return emit(report);
}

int cmd_bias(const std::string& relation, std::uint64_t samples, const AnalysisArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed);
  const unsigned workers = resolve_workers(a.workers);
  std::vector<FsmRelation> relations;
  if (relation == "snow1") {
    relations = {snow1_fsm_relation(BitOrder::kLsbZero), snow1_fsm_relation(BitOrder::kMsbZero)};
  } else {
    relations = {fsm_relation_by_id(relation)};
  }
  constexpr double kReferenceLog2 = -9.3;
  Json report = make_report("bias", {{"relation", relation}, {"samples", samples}}, seed);
  Json list = Json::array();
  std::optional<BiasReport> best;
  bool pass = false;
  for (const FsmRelation& rel : relations) {
    const BiasReport b = fsm_bias_mc(rel, samples, seed, workers);
    Json j = bias_json(b);
    j["significant"] = b.significant();
    if (rel.fair_coin) {
      const bool calibrated = std::abs(b.sigmas()) < kToleranceSigma;
      j["calibrated"] = calibrated;
      pass = pass || calibrated;
    } else {
      const double log2_bias = b.bias() != 0.0 ? std::log2(std::abs(b.bias())) : -INFINITY;
      j["log2_abs_bias"] = std::isfinite(log2_bias) ? Json(log2_bias) : Json(nullptr);
      j["reference_log2_bias"] = kReferenceLog2;
      j["within_factor_8"] = std::isfinite(log2_bias) && std::abs(log2_bias - kReferenceLog2) <= 3.0;
      pass = pass || b.significant();
    }
    if (!best || std::abs(b.sigmas()) > std::abs(best->sigmas())) best = b;
    list.push_back(std::move(j));
  }
  attach_bias(report, *best);
  report.erase("relation");
  report["best_relation"] = best->relation_id;
  report["relations"] = std::move(list);
  report["pass"] = pass;
  return emit(report);
}

int cmd_relations(const std::string& sbox_name, std::optional<std::size_t> expect, bool show_basis) {
  const ByteSBox sbox = sbox_by_name(sbox_name);
  if (!expect && sbox_name == "aes") expect = 39;
  const QuadraticRelations q = sbox_quadratic_relations(sbox);
  Json report = make_report("relations", {{"sbox", sbox.name()}}, 0);
  report["seed"] = nullptr;
  report["samples"] = 256;
  report["monomials"] = kQuadraticMonomials;
  report["rank"] = q.rank;
  report["count"] = q.count;
  report["expected"] = expect ? Json(*expect) : Json(nullptr);
  if (show_basis) {
    Json basis = Json::array();
    for (const BitVector& v : q.basis) {
      std::string eq;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v.get(i)) continue;
        if (!eq.empty()) eq += " + ";
        eq += monomial_name(i);
      }
      basis.push_back(eq + " = 0");
    }
    report["basis"] = std::move(basis);
  }
  report["pass"] = !expect || q.count == *expect;
  return emit(report);
}

int cmd_fault(std::size_t trials, std::size_t faults, const std::string& model_name, double min_success,
              const AnalysisArgs& a) {
  FaultModel model{};
  if (model_name == "word-reset") {
    model = FaultModel::kWordReset;
  } else if (model_name == "bit-flip") {
    model = FaultModel::kBitFlip;
  } else {
    throw InvalidArgument("fault model must be word-reset or bit-flip");
  }
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const std::uint64_t seed = resolve_seed(a.seed);
  const FaultTrialSummary s = fault_recovery_trials(trials, faults, seed, model, resolve_workers(a.workers));
  Json report = make_report(
      "fault-recover", {{"trials", trials}, {"faults", faults}, {"model", model_name}, {"min_success", min_success}},
      seed);
  const double rate = static_cast<double>(s.successes) / static_cast<double>(trials);
  report["samples"] = trials;
  report["estimate"] = rate;
  report["successes"] = s.successes;
  report["full_state"] = s.full_state;
  report["rank_min"] = *std::min_element(s.ranks.begin(), s.ranks.end());
  report["rank_max"] = *std::max_element(s.ranks.begin(), s.ranks.end());
  report["pass"] = rate >= min_success;
  return emit(report);
}

std::string key_state_hex(const MiniParams& p, const MiniKeyState& ks) {
  std::ostringstream os;
  os << "0x" << std::hex << encode_key_state(p, ks);
  return os.str();
}

int cmd_gd_mini(const std::string& config, const std::optional<std::string>& state_text, std::size_t words,
                std::uint64_t budget, const AnalysisArgs& a) {
  MiniParams p;
  if (!config.empty()) {
    std::ifstream in = open_input(config);
    p = read_mini_params(in, fs::path(config).parent_path());
  }
  p.validate();
  if (p.state_bits() > 24) throw InvalidArgument("gd-mini needs m * (n + 2) <= 24");
  const std::uint64_t seed = resolve_seed(a.seed);
  const std::uint32_t space = std::uint32_t{1} << p.state_bits();
  std::uint32_t packed = 0;
  if (state_text) {
    const std::uint64_t v = parse_u64(*state_text, "state");
    if (v >= space) throw InvalidArgument("state wider than m * (n + 2) bits");
    packed = static_cast<std::uint32_t>(v);
  } else {
    CounterRng rng(seed, 0);
    packed = static_cast<std::uint32_t>(rng.next() % space);
  }
  const MiniKeyState planted = decode_key_state(p, packed);
  MiniSnow cipher(p, planted);
  const std::vector<MiniWord> ks = cipher.keystream(words);

  Json params = {{"m", p.m}, {"n", p.n}, {"words", words}, {"budget", budget}};
  if (!config.empty()) params["config"] = config;
  Json report = make_report("gd-mini", params, seed);
  report["planted"] = key_state_hex(p, planted);
  report["keystream"] = ks;

  const GdResult gd = gd_attack_mini(p, ks);
  const std::vector<MiniKeyState> truth = mini_enumerate(p, ks, resolve_workers(a.workers));
  Json basis = Json::array();
  for (const GdVariable& v : gd.basis) basis.push_back(v.name());
  report["basis"] = std::move(basis);
  report["basis_bits"] = gd.basis_bits;
  report["samples"] = gd.guesses;
  report["guesses"] = gd.guesses;
  report["contradictions"] = gd.contradictions;
  report["undetermined"] = gd.undetermined;
  report["probes"] = gd.probes;
  report["within_budget"] = gd.guesses <= budget;
  report["consistent"] = gd.consistent.size();
  report["recovered"] = key_state_hex(p, gd.recovered);
  report["enumeration_matches"] = truth.size();
  const bool agrees = gd.consistent == truth;
  report["agrees_with_enumeration"] = agrees;
  report["pass"] = agrees && truth.size() == 1 && gd.recovered == planted;
  return emit(report);
}

// ---------------------------------------------------------------- bench

Json bench_one(CipherId id, FieldPath path, std::uint64_t bytes) {
  const std::uint64_t words = bytes / 4;
  Word sink = 0;
  const auto start = std::chrono::steady_clock::now();
  if (words > 0) {
    std::vector<Word> buf(std::min<std::uint64_t>(words, 1 << 14));
    auto run = [&](auto& cipher) {
      for (std::uint64_t done = 0; done < words;) {
        const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(buf.size(), words - done));
        cipher.keystream(std::span<Word>(buf.data(), n));
        for (std::size_t i = 0; i < n; ++i) sink ^= buf[i];
        done += n;
      }
    };
    switch (id) {
      case CipherId::kSnow1: {
        Snow1 c{Snow1Key{}};
        run(c);
        break;
      }
      case CipherId::kSnow2: {
        Snow2Options o;
        o.path = path;
        Snow2 c(Snow2Key{}, o);
        run(c);
        break;
      }
      case CipherId::kSnow3g: {
        Snow3g c{Snow3gKey{}};
        run(c);
        break;
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json j;
  j["path"] = path == FieldPath::kTable ? "table" : "poly";
  j["bytes"] = words * 4;
  j["seconds"] = words > 0 ? seconds : 0.0;
  j["mb_per_s"] = words > 0 && seconds > 0 ? static_cast<double>(words * 4) / 1e6 / seconds : 0.0;
  j["checksum"] = format_word(sink);
  return j;
}

int cmd_bench(const std::string& cipher, double megabytes, const std::string& path) {
  const CipherId id = parse_cipher(cipher);
  if (!(megabytes >= 0.0) || megabytes > 1e6) throw InvalidArgument("megabytes must be in [0, 1e6]");
  if (path != "table" && path != "poly" && path != "both") throw InvalidArgument("path must be table, poly or both");
  if (id != CipherId::kSnow2 && path != "table" && path != "both") {
    throw InvalidArgument("only snow2 has a polynomial path");
  }
  const auto bytes = static_cast<std::uint64_t>(megabytes * 1e6);
  Json report;
  report["schema"] = kReportSchema;
  report["tool_version"] = kToolVersion;
  report["command"] = {{"name", "bench"}, {"cipher", cipher}, {"megabytes", megabytes}, {"path", path}};
  report["seed"] = nullptr;
  Json results = Json::array();
  if (path != "poly") results.push_back(bench_one(id, FieldPath::kTable, bytes));
  if (id == CipherId::kSnow2 && path != "table") results.push_back(bench_one(id, FieldPath::kPolynomial, bytes));
  if (results.size() == 2) {
    const double table = results[0]["mb_per_s"].get<double>();
    const double poly = results[1]["mb_per_s"].get<double>();
    report["speedup"] = poly > 0 ? Json(table / poly) : Json(nullptr);
  }
  report["results"] = std::move(results);
  report["pass"] = true;
  std::cout << dump_report(report) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SNOW 1.0 / 2.0 / 3G keystream generators and analysis experiments", "snowlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::function<int()> action;

  CipherArgs ks_args;
  std::uint64_t ks_count = 16;
  std::uint64_t ks_discard = 0;
  std::string ks_format = "hex";
  auto* ks = app.add_subcommand("keystream", "print keystream words");
  add_cipher_options(ks, ks_args);
  ks->add_option("--count", ks_count, "number of words");
  ks->add_option("--discard", ks_discard, "words skipped before output");
  ks->add_option("--format", ks_format, "hex (one word per line) or binary (big-endian)");
  ks->callback([&] { action = [&] { return cmd_keystream(ks_args, ks_count, ks_discard, ks_format); }; });

  CipherArgs enc_args, dec_args;
  std::string enc_in, enc_out, dec_in, dec_out;
  auto* enc = app.add_subcommand("encrypt", "XOR a file with keystream");
  add_cipher_options(enc, enc_args);
  enc->add_option("--in", enc_in, "input file")->required();
  enc->add_option("--out", enc_out, "output file")->required();
  enc->callback([&] { action = [&] { return cmd_crypt(enc_args, enc_in, enc_out); }; });
  auto* dec = app.add_subcommand("decrypt", "inverse of encrypt");
  add_cipher_options(dec, dec_args);
  dec->add_option("--in", dec_in, "input file")->required();
  dec->add_option("--out", dec_out, "output file")->required();
  dec->callback([&] { action = [&] { return cmd_crypt(dec_args, dec_in, dec_out); }; });

  std::string vec_path;
  auto* vec = app.add_subcommand("vectors", "check a test-vector file and print a JSON report");
  vec->add_option("path", vec_path, "vector file")->required();
  vec->callback([&] { action = [&] { return cmd_vectors(vec_path); }; });

  auto* analyze = app.add_subcommand("analyze", "run an analysis experiment (JSON report)");
  analyze->require_subcommand(1);

  BitSource bm_src;
  std::size_t bm_bits = 0, bm_check = 4096;
  AnalysisArgs bm_common;
  auto* bm = analyze->add_subcommand("bm", "Berlekamp-Massey linear complexity");
  add_bit_source(bm, bm_src);
  bm->add_option("--bits", bm_bits, "bits to use (default: all, or 2 * degree for --mseq)");
  bm->add_option("--check", bm_check, "extra m-sequence bits compared after recovery");
  add_common(bm, bm_common, false);
  bm->callback([&] { action = [&] { return cmd_bm(bm_src, bm_bits, bm_check); }; });

  BitSource go_src;
  std::size_t go_period = 0;
  AnalysisArgs go_common;
  auto* golomb = analyze->add_subcommand("golomb", "Golomb randomness postulates over one period");
  add_bit_source(golomb, go_src);
  golomb->add_option("--period", go_period, "period length (default: whole input or 2^d - 1)");
  add_common(golomb, go_common, false);
  golomb->callback([&] { action = [&] { return cmd_golomb(go_src, go_period); }; });

  int carry_i = 1;
  std::uint64_t carry_samples = 1000000;
  AnalysisArgs carry_common;
  auto* carry = analyze->add_subcommand("carry", "carry-bit probability of modular addition");
  carry->add_option("--i", carry_i, "bit index 0..31");
  carry->add_option("--samples", carry_samples, "Monte Carlo samples");
  add_common(carry, carry_common, true);
  carry->callback([&] { action = [&] { return cmd_carry(carry_i, carry_samples, carry_common); }; });

  std::string corr_sbox = "aes", corr_t = "1", corr_lambda = "1";
  AnalysisArgs corr_common;
  auto* corr = analyze->add_subcommand("corr", "exhaustive mask correlation of a byte S-box");
  corr->add_option("--sbox", corr_sbox, "aes, inversion, inversion-aes, sq, snow1, identity or a file");
  corr->add_option("--t", corr_t, "output mask");
  corr->add_option("--lambda", corr_lambda, "input mask");
  add_common(corr, corr_common, false);
  corr->callback([&] { action = [&] { return cmd_corr(corr_sbox, corr_t, corr_lambda); }; });

  std::string bias_relation = "snow1";
  std::uint64_t bias_samples = std::uint64_t{1} << 24;
  AnalysisArgs bias_common;
  auto* bias = analyze->add_subcommand("bias", "Monte Carlo bias of a SNOW 1.0 FSM relation");
  bias->add_option("--relation", bias_relation, "snow1 (both bit orders), snow1-fsm, snow1-fsm-msb or fair-coin");
  bias->add_option("--samples", bias_samples, "Monte Carlo samples");
  add_common(bias, bias_common, true);
  bias->callback([&] { action = [&] { return cmd_bias(bias_relation, bias_samples, bias_common); }; });

  std::string rel_sbox = "aes";
  std::optional<std::size_t> rel_expect;
  bool rel_basis = false;
  AnalysisArgs rel_common;
  auto* rel = analyze->add_subcommand("relations", "count quadratic relations of a byte S-box");
  rel->add_option("--sbox", rel_sbox, "aes, inversion, inversion-aes, sq, snow1, identity or a file");
  rel->add_option("--expect", rel_expect, "required count (default 39 for aes)");
  rel->add_flag("--basis", rel_basis, "list a basis of the relations");
  add_common(rel, rel_common, false);
  rel->callback([&] { action = [&] { return cmd_relations(rel_sbox, rel_expect, rel_basis); }; });

  std::size_t fr_trials = 100, fr_faults = 24;
  std::string fr_model = "word-reset";
  double fr_min = 0.95;
  AnalysisArgs fr_common;
  auto* fr = analyze->add_subcommand("fault-recover", "fault-based LFSR recovery on linearized SNOW 3G");
  fr->add_option("--trials", fr_trials, "random planted states");
  fr->add_option("--faults", fr_faults, "faults per trial (at most 64)");
  fr->add_option("--model", fr_model, "word-reset or bit-flip");
  fr->add_option("--min-success", fr_min, "success fraction required to pass");
  add_common(fr, fr_common, true);
  fr->callback([&] { action = [&] { return cmd_fault(fr_trials, fr_faults, fr_model, fr_min, fr_common); }; });

  std::string gd_config;
  std::optional<std::string> gd_state;
  std::size_t gd_words = 12;
  std::uint64_t gd_budget = 256;
  AnalysisArgs gd_common;
  auto* gd = analyze->add_subcommand("gd-mini", "guess-and-determine on the scaled cipher");
  gd->add_option("--config", gd_config, "MiniParams text file (default m=4, n=4)");
  gd->add_option("--state", gd_state, "planted key state as a packed integer (default: drawn from the seed)");
  gd->add_option("--words", gd_words, "keystream words observed");
  gd->add_option("--budget", gd_budget, "guess budget reported as within_budget");
  add_common(gd, gd_common, true);
  gd->callback([&] { action = [&] { return cmd_gd_mini(gd_config, gd_state, gd_words, gd_budget, gd_common); }; });

  std::string bench_cipher = "snow2", bench_path = "both";
  double bench_mb = 4.0;
  auto* bench = app.add_subcommand("bench", "keystream throughput");
  bench->add_option("--cipher", bench_cipher, "snow1, snow2 or snow3g");
  bench->add_option("--megabytes", bench_mb, "keystream volume per path");
  bench->add_option("--path", bench_path, "table, poly or both (snow2 only for poly)");
  bench->callback([&] { action = [&] { return cmd_bench(bench_cipher, bench_mb, bench_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const BudgetExhausted& e) {
    std::cerr << "snowlab: " << e.what() << '\n';
    return kExitBudget;
  } catch (const IoError& e) {
    std::cerr << "snowlab: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "snowlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "snowlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoConsistentState& e) {
    std::cerr << "snowlab: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "snowlab: " << e.what() << '\n';
    return kExitFail;
  }
}
