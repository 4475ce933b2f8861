#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snowlab/field.hpp"
#include "snowlab/sbox.hpp"

namespace snowlab {

/// 256-bit key k1..k8 and 64-bit IV, both in tuple order: iv[0] = IV2, iv[1] = IV1.
struct Snow1Key {
  std::array<Word, 8> key{};
  std::array<Word, 2> iv{};
};

/// lfsr[0] is St_t, the oldest word; new words enter at lfsr[15].
struct Snow1State {
  std::array<Word, 16> lfsr{};
  Word r1 = 0;
  Word r2 = 0;
  std::uint64_t clock = 0;

  friend bool operator==(const Snow1State&, const Snow1State&) = default;
};

enum class Snow1InitMode {
  kFeedbackFold,   // Fm is XORed into the incoming feedback word
  kWholeStateXor,  // Fm is XORed into every LFSR cell after the shift
};

struct Snow1Options {
  Snow1InitMode init_mode = Snow1InitMode::kFeedbackFold;
  BitPermutation permutation{};
};

inline constexpr int kSnow1InitRounds = 32;

class Snow1 {
 public:
  explicit Snow1(const Snow1Key& key, Snow1Options options = {});

  /// Wraps an arbitrary state without running the key schedule.
  static Snow1 from_state(const Snow1State& state, Snow1Options options = {});

  /// Fm = (St_t + R1) ^ R2, then R1 <- ((Fm + R2) <<< 7) ^ R1 and R2 <- S(R1_old).
  Word fsm_step();
  /// Shifts in alpha * (St_t ^ St_t+3 ^ St_t+9) ^ extra at the top of the register.
  void lfsr_step(Word extra = 0);
  /// One keystream word z_t = Fm_t ^ St_t, with both values read before clocking.
  Word step();

  std::vector<Word> keystream(std::size_t count);
  void keystream(std::span<Word> out);

  const Snow1State& state() const { return state_; }
  const Snow1Options& options() const { return options_; }

 private:
  Snow1(const Snow1State& state, Snow1Options options);
  Word sbox(Word w) const;

  Snow1State state_;
  Snow1Options options_;
  bool identity_permutation_;
};

}  // namespace snowlab
