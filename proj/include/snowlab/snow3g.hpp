#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snowlab/field.hpp"

namespace snowlab {

// The FSM wiring, key loading and S2 layer of SNOW 3G follow the public 3GPP
// UEA2/UIA2 algorithm description; the word field and S1 are shared with SNOW 2.0.

/// 128-bit key k0..k3 and IV IV0..IV3, each in hex-string order (k0 and IV0 first).
struct Snow3gKey {
  std::array<Word, 4> key{};
  std::array<Word, 4> iv{};
};

struct Snow3gOptions {
  /// Replace word addition by XOR and both S layers by the identity.
  bool linearized = false;
};

class FaultHook;
class Snow3g;

/// Complete value copy of a SNOW 3G state; only FaultHook can look inside.
class Snow3gSnapshot {
 public:
  std::uint64_t clock() const { return clock_; }
  bool linearized() const { return linearized_; }
  friend bool operator==(const Snow3gSnapshot&, const Snow3gSnapshot&) = default;

 private:
  friend class Snow3g;
  friend class FaultHook;

  std::array<Word, 16> lfsr_{};
  Word r1_ = 0;
  Word r2_ = 0;
  Word r3_ = 0;
  std::uint64_t clock_ = 0;
  bool linearized_ = false;
};

inline constexpr int kSnow3gInitRounds = 32;

class Snow3g {
 public:
  explicit Snow3g(const Snow3gKey& key, Snow3gOptions options = {});

  static Snow3g restore(const Snow3gSnapshot& snapshot);
  Snow3gSnapshot snapshot() const { return state_; }

  Word step();
  std::vector<Word> keystream(std::size_t count);
  void keystream(std::span<Word> out);

  std::uint64_t clock() const { return state_.clock_; }

 private:
  explicit Snow3g(const Snow3gSnapshot& state) : state_(state) {}
  Word clock_fsm();
  void clock_lfsr(Word extra);
  Word add(Word a, Word b) const { return state_.linearized_ ? a ^ b : add_mod32(a, b); }

  Snow3gSnapshot state_;
};

}  // namespace snowlab
