#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "snowlab/field.hpp"
#include "snowlab/snow2.hpp"

namespace snowlab {

enum class CipherId { kSnow1, kSnow2, kSnow3g };

/// Accepts snow1, snow2 and snow3g; throws InvalidArgument otherwise.
CipherId parse_cipher(std::string_view name);
std::string cipher_name(CipherId id);
std::size_t key_words(CipherId id);
std::size_t iv_words(CipherId id);

/// Uniform front end over the three ciphers, keyed from word vectors in hex order.
class KeystreamGenerator {
 public:
  /// `snow2_limit` caps the SNOW 2.0 keystream budget and is ignored by the others.
  KeystreamGenerator(CipherId id, const std::vector<Word>& key, const std::vector<Word>& iv,
                     std::uint64_t snow2_limit = kSnow2DefaultLimit);
  KeystreamGenerator(KeystreamGenerator&&) noexcept;
  KeystreamGenerator& operator=(KeystreamGenerator&&) noexcept;
  ~KeystreamGenerator();

  /// Throws BudgetExhausted for snow2 once its limit is reached.
  Word next();
  std::vector<Word> take(std::size_t count);
  void skip(std::uint64_t count);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct VectorEntry {
  CipherId cipher = CipherId::kSnow2;
  std::vector<Word> key;
  std::vector<Word> iv;
  std::uint64_t discard = 0;
  std::vector<Word> expected;
  std::size_t line = 0;
};

/// Lines `cipher=<name> key=<hex> iv=<hex> discard=<n> ks=<w w ..>`, `#` comments.
/// Throws ParseError with the offending line number; a file without entries is an error.
std::vector<VectorEntry> read_vector_file(std::istream& in);
std::string format_vector_entry(const VectorEntry& entry);

struct VectorOutcome {
  bool pass = false;
  std::vector<Word> actual;
};

VectorOutcome run_vector(const VectorEntry& entry);

}  // namespace snowlab
