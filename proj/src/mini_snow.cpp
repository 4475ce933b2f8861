#include "snowlab/mini_snow.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <thread>

#include "snowlab/errors.hpp"

namespace snowlab {
namespace {

int degree(unsigned p) { return p == 0 ? -1 : std::bit_width(p) - 1; }

unsigned poly_mod(unsigned a, unsigned b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

bool is_irreducible(unsigned poly) {
  const int d = degree(poly);
  if (d < 1) return false;
  for (unsigned q = 2; degree(q) <= d / 2; ++q) {
    if (poly_mod(poly, q) == 0) return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_int(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "not an integer: '" + text + "'");
  }
}

std::vector<MiniWord> parse_hex_list(std::istream& in, std::size_t line) {
  std::vector<MiniWord> out;
  std::string token;
  std::string raw;
  while (std::getline(in, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    if (raw.find('=') != std::string::npos) continue;  // name= and similar headers
    std::istringstream ls(raw);
    while (ls >> token) {
      std::string t = token;
      if (!t.empty() && t.back() == ',') t.pop_back();
      if (t.empty()) continue;
      const long v = parse_int(t.rfind("0x", 0) == 0 ? t : "0x" + t, line);
      if (v < 0 || v > 0xFF) throw ParseError(line, "sbox entry out of range: " + t);
      out.push_back(static_cast<MiniWord>(v));
    }
  }
  return out;
}

}  // namespace

MiniField::MiniField(int m, unsigned polynomial) : m_(m), poly_(polynomial) {
  if (m < 1 || m > 8) throw InvalidArgument("mini word size must be 1..8 bits");
  if (degree(polynomial) != m) throw InvalidArgument("field polynomial degree must equal m");
  if (!is_irreducible(polynomial)) throw InvalidArgument("field polynomial is reducible");
}

MiniWord MiniField::mul(MiniWord a, MiniWord b) const {
  unsigned product = 0;
  unsigned x = a;
  while (b != 0) {
    if (b & 1) product ^= x;
    x <<= 1;
    if (x >> m_) x ^= poly_;
    b >>= 1;
  }
  return static_cast<MiniWord>(product);
}

MiniWord MiniField::inv(MiniWord a) const {
  if (a == 0) return 0;
  const unsigned order = (1u << m_) - 1;
  MiniWord r = 1;
  for (unsigned i = 0; i + 1 < order; ++i) r = mul(r, a);  // a^(order-1)
  return r;
}

MiniWord MiniField::alpha_pow(unsigned e) const {
  const MiniWord alpha = m_ == 1 ? 1 : 2;
  MiniWord r = 1;
  for (unsigned i = 0; i < e; ++i) r = mul(r, alpha);
  return r;
}

bool MiniField::alpha_is_primitive() const {
  const unsigned order = (1u << m_) - 1;
  MiniWord x = alpha_pow(1);
  for (unsigned k = 1; k < order; ++k) {
    if (x == 1) return false;
    x = mul(x, alpha_pow(1));
  }
  return x == 1;
}

unsigned default_mini_polynomial(int m) {
  static constexpr unsigned kPolys[] = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D};
  if (m < 1 || m > 8) throw InvalidArgument("mini word size must be 1..8 bits");
  return kPolys[m];
}

MiniField MiniParams::field() const {
  return MiniField(m, polynomial == 0 ? default_mini_polynomial(m) : polynomial);
}

std::vector<MiniWord> MiniParams::resolved_sbox() const {
  if (!sbox.empty()) return sbox;
  const MiniField f = field();
  std::vector<MiniWord> table(std::size_t{1} << m);
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = f.inv(static_cast<MiniWord>(x));
  return table;
}

void MiniParams::validate() const {
  if (m < 1 || m > 8) throw InvalidArgument("mini word size must be 1..8 bits");
  if (n < 1 || n > 8) throw InvalidArgument("mini LFSR length must be 1..8 cells");
  (void)field();
  if (taps.empty()) throw InvalidArgument("at least one feedback tap is required");
  for (const MiniTap& t : taps) {
    if (t.index < 0 || t.index >= n) throw InvalidArgument("tap index out of range");
  }
  if (top_index() < 0 || top_index() >= n) throw InvalidArgument("top index out of range");
  if (mid_index() < 0 || mid_index() >= n) throw InvalidArgument("mid index out of range");
  if (!sbox.empty()) {
    if (sbox.size() != (std::size_t{1} << m)) throw InvalidArgument("sbox must have 2^m entries");
    std::vector<bool> seen(sbox.size(), false);
    for (MiniWord v : sbox) {
      if (v >= sbox.size() || seen[v]) throw InvalidArgument("sbox is not a permutation");
      seen[v] = true;
    }
  }
}

MiniParams read_mini_params(std::istream& in, const std::filesystem::path& base_dir) {
  MiniParams p;
  p.sbox.clear();
  std::string raw;
  std::size_t line = 0;
  std::string sbox_spec;
  std::size_t sbox_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key=value");
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key == "m") {
      p.m = static_cast<int>(parse_int(value, line));
    } else if (key == "n") {
      p.n = static_cast<int>(parse_int(value, line));
    } else if (key == "polynomial") {
      p.polynomial = static_cast<unsigned>(parse_int(value, line));
    } else if (key == "top") {
      p.top = static_cast<int>(parse_int(value, line));
    } else if (key == "mid") {
      p.mid = static_cast<int>(parse_int(value, line));
    } else if (key == "arith") {
      if (value == "modular") {
        p.arith = MiniArith::kModular;
      } else if (value == "xor") {
        p.arith = MiniArith::kXor;
      } else {
        throw ParseError(line, "arith must be modular or xor");
      }
    } else if (key == "taps") {
      p.taps.clear();
      std::istringstream ts(value);
      std::string item;
      while (std::getline(ts, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        MiniTap t;
        t.index = static_cast<int>(parse_int(trim(item.substr(0, colon)), line));
        t.power = colon == std::string::npos ? 0u
                                             : static_cast<unsigned>(parse_int(trim(item.substr(colon + 1)), line));
        p.taps.push_back(t);
      }
    } else if (key == "sbox") {
      sbox_spec = value;
      sbox_line = line;
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (line == 0) throw ParseError(1, "empty mini configuration");

  if (sbox_spec.empty() || sbox_spec == "inversion") {
    p.sbox.clear();
  } else if (sbox_spec == "identity") {
    p.sbox.resize(std::size_t{1} << std::clamp(p.m, 1, 8));
    for (std::size_t i = 0; i < p.sbox.size(); ++i) p.sbox[i] = static_cast<MiniWord>(i);
  } else {
    std::filesystem::path path = sbox_spec;
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    std::ifstream f(path);
    if (f) {
      p.sbox = parse_hex_list(f, sbox_line);
    } else {
      std::istringstream inline_list(sbox_spec);
      p.sbox = parse_hex_list(inline_list, sbox_line);
    }
  }
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(line, e.what());
  }
  return p;
}

MiniSnow::MiniSnow(const MiniParams& params, const MiniKeyState& key_state)
    : params_(params), mask_(0), top_(params.top_index()) {
  params_.validate();
  if (key_state.words.size() != static_cast<std::size_t>(params_.n + 2)) {
    throw InvalidArgument("key state must hold n + 2 words");
  }
  const MiniField f = params_.field();
  mask_ = f.mask();
  for (MiniWord w : key_state.words) {
    if (w & ~mask_) throw InvalidArgument("key-state word wider than m bits");
  }
  for (const MiniTap& t : params_.taps) {
    const MiniWord c = f.alpha_pow(t.power);
    std::vector<MiniWord> table(std::size_t{1} << params_.m);
    for (std::size_t x = 0; x < table.size(); ++x) table[x] = f.mul(c, static_cast<MiniWord>(x));
    tap_tables_.push_back(std::move(table));
  }
  sbox_ = params_.resolved_sbox();
  lfsr_.assign(key_state.words.begin(), key_state.words.begin() + params_.n);
  r1_ = key_state.words[params_.n];
  r2_ = key_state.words[params_.n + 1];
}

MiniWord MiniSnow::add(MiniWord a, MiniWord b) const {
  if (params_.arith == MiniArith::kXor) return a ^ b;
  return static_cast<MiniWord>((a + b) & mask_);
}

MiniWord MiniSnow::feedback() const {
  MiniWord v = 0;
  for (std::size_t i = 0; i < params_.taps.size(); ++i) v ^= tap_tables_[i][lfsr_[params_.taps[i].index]];
  return v;
}

void MiniSnow::lfsr_step() {
  const MiniWord v = feedback();
  std::shift_left(lfsr_.begin(), lfsr_.end(), 1);
  lfsr_.back() = v;
}

MiniWord MiniSnow::step() {
  const MiniWord fm = add(lfsr_[top_], r1_) ^ r2_;
  const MiniWord z = fm ^ lfsr_[0];
  const MiniWord r1_next = add(lfsr_[params_.mid_index()], r2_);
  r2_ = sbox_[r1_];
  r1_ = r1_next;
  lfsr_step();
  return z;
}

std::vector<MiniWord> MiniSnow::keystream(std::size_t count) {
  std::vector<MiniWord> out(count);
  for (MiniWord& w : out) w = step();
  return out;
}

MiniKeyState MiniSnow::key_state() const {
  MiniKeyState ks{lfsr_};
  ks.words.push_back(r1_);
  ks.words.push_back(r2_);
  return ks;
}

void MiniSnow::reset(std::uint32_t packed) {
  const int m = params_.m;
  for (int i = 0; i < params_.n; ++i) lfsr_[i] = static_cast<MiniWord>((packed >> (m * i)) & mask_);
  r1_ = static_cast<MiniWord>((packed >> (m * params_.n)) & mask_);
  r2_ = static_cast<MiniWord>((packed >> (m * (params_.n + 1))) & mask_);
}

std::uint32_t encode_key_state(const MiniParams& params, const MiniKeyState& ks) {
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < ks.words.size(); ++i) index |= std::uint32_t{ks.words[i]} << (params.m * i);
  return index;
}

MiniKeyState decode_key_state(const MiniParams& params, std::uint32_t index) {
  MiniKeyState ks;
  const std::uint32_t mask = (1u << params.m) - 1;
  for (int i = 0; i < params.n + 2; ++i) ks.words.push_back(static_cast<MiniWord>((index >> (params.m * i)) & mask));
  return ks;
}

std::uint64_t mini_period(const MiniParams& params, std::span<const MiniWord> start) {
  params.validate();
  if (params.m * params.n > 24) throw InvalidArgument("period test requires m * n <= 24");
  if (start.size() != static_cast<std::size_t>(params.n)) throw InvalidArgument("start must hold n words");
  if (std::all_of(start.begin(), start.end(), [](MiniWord w) { return w == 0; })) {
    throw InvalidArgument("period of the all-zero state is undefined");
  }
  MiniKeyState ks{{start.begin(), start.end()}};
  ks.words.push_back(0);
  ks.words.push_back(0);
  MiniSnow cipher(params, ks);
  const std::uint64_t bound = std::uint64_t{1} << (params.m * params.n);
  for (std::uint64_t t = 1; t <= bound; ++t) {
    cipher.lfsr_step();
    if (std::equal(start.begin(), start.end(), cipher.lfsr().begin())) return t;
  }
  throw Error("start state is not on a cycle (feedback is singular)");
}

std::vector<MiniKeyState> mini_enumerate(const MiniParams& params, std::span<const MiniWord> prefix,
                                         unsigned workers) {
  params.validate();
  if (params.state_bits() > 24) throw InvalidArgument("enumeration requires m * (n + 2) <= 24");
  const std::uint64_t total = std::uint64_t{1} << params.state_bits();
  workers = std::max(1u, workers);
  const std::uint64_t span = (total + workers - 1) / workers;
  std::vector<std::vector<MiniKeyState>> parts(workers);

  auto scan = [&](unsigned w) {
    const std::uint64_t lo = std::min(total, w * span);
    const std::uint64_t hi = std::min(total, lo + span);
    MiniSnow cipher(params, decode_key_state(params, 0));
    for (std::uint64_t index = lo; index < hi; ++index) {
      cipher.reset(static_cast<std::uint32_t>(index));
      bool match = true;
      for (MiniWord expected : prefix) {
        if (cipher.step() != expected) {
          match = false;
          break;
        }
      }
      if (match) parts[w].push_back(decode_key_state(params, static_cast<std::uint32_t>(index)));
    }
  };

  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(scan, w);
  }

  std::vector<MiniKeyState> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace snowlab
