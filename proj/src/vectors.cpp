#include "snowlab/vectors.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <sstream>
#include <variant>

#include "snowlab/errors.hpp"
#include "snowlab/hex.hpp"
#include "snowlab/snow1.hpp"
#include "snowlab/snow2.hpp"
#include "snowlab/snow3g.hpp"

namespace snowlab {

CipherId parse_cipher(std::string_view name) {
  if (name == "snow1") return CipherId::kSnow1;
  if (name == "snow2") return CipherId::kSnow2;
  if (name == "snow3g") return CipherId::kSnow3g;
  throw InvalidArgument("unknown cipher '" + std::string(name) + "' (snow1, snow2, snow3g)");
}

std::string cipher_name(CipherId id) {
  switch (id) {
    case CipherId::kSnow1: return "snow1";
    case CipherId::kSnow2: return "snow2";
    case CipherId::kSnow3g: return "snow3g";
  }
  return "?";
}

std::size_t key_words(CipherId id) { return id == CipherId::kSnow3g ? 4 : 8; }

std::size_t iv_words(CipherId id) { return id == CipherId::kSnow1 ? 2 : 4; }

struct KeystreamGenerator::Impl {
  std::variant<Snow1, Snow2, Snow3g> cipher;
};

namespace {

template <std::size_t N>
std::array<Word, N> to_array(const std::vector<Word>& v) {
  std::array<Word, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

std::variant<Snow1, Snow2, Snow3g> make_cipher(CipherId id, const std::vector<Word>& key,
                                               const std::vector<Word>& iv, std::uint64_t snow2_limit) {
  if (key.size() != key_words(id) || iv.size() != iv_words(id)) {
    throw InvalidArgument(cipher_name(id) + " needs a " + std::to_string(32 * key_words(id)) + "-bit key and a " +
                          std::to_string(32 * iv_words(id)) + "-bit IV");
  }
  switch (id) {
    case CipherId::kSnow1: return Snow1(Snow1Key{to_array<8>(key), to_array<2>(iv)});
    case CipherId::kSnow2: {
      Snow2Options options;
      options.limit = snow2_limit;
      return Snow2(Snow2Key{to_array<8>(key), to_array<4>(iv)}, options);
    }
    case CipherId::kSnow3g: break;
  }
  return Snow3g(Snow3gKey{to_array<4>(key), to_array<4>(iv)});
}

}  // namespace

KeystreamGenerator::KeystreamGenerator(CipherId id, const std::vector<Word>& key, const std::vector<Word>& iv,
                                       std::uint64_t snow2_limit)
    : impl_(new Impl{make_cipher(id, key, iv, snow2_limit)}) {}
KeystreamGenerator::KeystreamGenerator(KeystreamGenerator&&) noexcept = default;
KeystreamGenerator& KeystreamGenerator::operator=(KeystreamGenerator&&) noexcept = default;
KeystreamGenerator::~KeystreamGenerator() = default;

Word KeystreamGenerator::next() {
  return std::visit([](auto& c) { return c.step(); }, impl_->cipher);
}

std::vector<Word> KeystreamGenerator::take(std::size_t count) {
  std::vector<Word> out(count);
  std::visit([&](auto& c) { c.keystream(std::span<Word>(out)); }, impl_->cipher);
  return out;
}

void KeystreamGenerator::skip(std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) next();
}

std::vector<VectorEntry> read_vector_file(std::istream& in) {
  std::vector<VectorEntry> entries;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;

    // ks= takes every remaining token, so split it off first.
    std::string ks_text;
    const auto ks_pos = raw.find("ks=");
    if (ks_pos != std::string::npos) {
      ks_text = raw.substr(ks_pos + 3);
      raw.resize(ks_pos);
    }
    VectorEntry e;
    e.line = line;
    bool have_cipher = false;
    std::string key_hex;
    std::string iv_hex;
    std::istringstream fields(raw);
    std::string token;
    try {
      while (fields >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + token + "'");
        const std::string k = token.substr(0, eq);
        const std::string v = token.substr(eq + 1);
        if (k == "cipher") {
          e.cipher = parse_cipher(v);
          have_cipher = true;
        } else if (k == "key") {
          key_hex = v;
        } else if (k == "iv") {
          iv_hex = v;
        } else if (k == "discard") {
          std::size_t used = 0;
          e.discard = std::stoull(v, &used);
          if (used != v.size()) throw ParseError(line, "bad discard count '" + v + "'");
        } else {
          throw ParseError(line, "unknown field '" + k + "'");
        }
      }
      if (!have_cipher) throw ParseError(line, "missing cipher=");
      if (key_hex.empty() || iv_hex.empty()) throw ParseError(line, "missing key= or iv=");
      e.key = parse_hex_words(key_hex, key_words(e.cipher));
      e.iv = parse_hex_words(iv_hex, iv_words(e.cipher));
      std::istringstream ks(ks_text);
      while (ks >> token) e.expected.push_back(parse_hex_words(token, 1).front());
      if (e.expected.empty()) throw ParseError(line, "ks= needs at least one word");
    } catch (const ParseError&) {
      throw;
    } catch (const std::logic_error& err) {
      throw ParseError(line, err.what());
    } catch (const InvalidArgument& err) {
      throw ParseError(line, err.what());
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw ParseError(line == 0 ? 1 : line, "vector file has no entries");
  return entries;
}

std::string format_vector_entry(const VectorEntry& e) {
  return "cipher=" + cipher_name(e.cipher) + " key=" + format_words(e.key, "") +
         " iv=" + format_words(e.iv, "") + " discard=" + std::to_string(e.discard) +
         " ks=" + format_words(e.expected);
}

VectorOutcome run_vector(const VectorEntry& entry) {
  KeystreamGenerator gen(entry.cipher, entry.key, entry.iv);
  gen.skip(entry.discard);
  VectorOutcome out;
  out.actual = gen.take(entry.expected.size());
  out.pass = out.actual == entry.expected;
  return out;
}

}  // namespace snowlab
