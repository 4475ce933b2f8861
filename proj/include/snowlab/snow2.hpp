#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "snowlab/field.hpp"
#include "snowlab/sbox.hpp"

namespace snowlab {

/// 256-bit key k0..k7 and 128-bit IV in tuple order: iv[0] = IV3, .., iv[3] = IV0.
struct Snow2Key {
  std::array<Word, 8> key{};
  std::array<Word, 4> iv{};
};

struct Snow2State {
  std::array<Word, 16> lfsr{};
  Word r1 = 0;
  Word r2 = 0;
  std::uint64_t clock = 0;

  friend bool operator==(const Snow2State&, const Snow2State&) = default;
};

enum class FieldPath {
  kTable,       // byte-indexed alpha tables and folded S1 tables
  kPolynomial,  // per-call coefficient arithmetic, for comparison only
};

inline constexpr std::uint64_t kSnow2DefaultLimit = std::uint64_t{1} << 50;
inline constexpr int kSnow2InitRounds = 32;

struct Snow2Options {
  /// S1 layer; null selects snow2_s1().
  std::shared_ptr<const SubstitutionLayer> s1;
  /// Replace word addition by XOR and S1 by the identity.
  bool linearized = false;
  std::uint64_t limit = kSnow2DefaultLimit;
  FieldPath path = FieldPath::kTable;
};

class Snow2 {
 public:
  /// Loads the key/IV, runs 32 mixing clocks and discards the first keystream word.
  explicit Snow2(const Snow2Key& key, Snow2Options options = {});

  static Snow2 from_state(const Snow2State& state, Snow2Options options = {});

  /// Throws BudgetExhausted once `limit` words have been produced.
  Word step();

  std::vector<Word> keystream(std::size_t count);
  void keystream(std::span<Word> out);

  /// XOR with keystream words serialized big-endian; a trailing partial word
  /// consumes a whole keystream word.
  std::vector<Byte> encrypt(std::span<const Byte> data);

  const Snow2State& state() const { return state_; }
  std::uint64_t produced() const { return produced_; }
  std::uint64_t limit() const { return options_.limit; }

 private:
  Snow2(const Snow2State& state, Snow2Options options);
  Word clock(bool init_mode);
  Word add(Word a, Word b) const { return options_.linearized ? a ^ b : add_mod32(a, b); }
  Word s1(Word w) const;
  Word times_alpha(Word w) const;
  Word times_alpha_inv(Word w) const;

  Snow2State state_;
  Snow2Options options_;
  const AlphaTables* tables_;
  std::uint64_t produced_ = 0;
};

}  // namespace snowlab
