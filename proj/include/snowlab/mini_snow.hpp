#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace snowlab {

using MiniWord = std::uint8_t;

/// GF(2^m) for 1 <= m <= 8, given by a degree-m polynomial with bit m set.
class MiniField {
 public:
  MiniField(int m, unsigned polynomial);

  int bits() const { return m_; }
  unsigned polynomial() const { return poly_; }
  MiniWord mask() const { return static_cast<MiniWord>((1u << m_) - 1); }
  MiniWord mul(MiniWord a, MiniWord b) const;
  MiniWord inv(MiniWord a) const;
  /// alpha^e, where alpha is the class of y (the companion-matrix generator).
  MiniWord alpha_pow(unsigned e) const;
  /// True when alpha has multiplicative order 2^m - 1.
  bool alpha_is_primitive() const;

 private:
  int m_;
  unsigned poly_;
};

/// Smallest-weight primitive polynomial used when MiniParams leaves it unset.
unsigned default_mini_polynomial(int m);

enum class MiniArith { kModular, kXor };

/// Feedback term alpha^power * s[index].
struct MiniTap {
  int index = 0;
  unsigned power = 0;
  friend bool operator==(const MiniTap&, const MiniTap&) = default;
};

/// Scaled SNOW-2.0-shaped cipher: n cells of m bits, FSM registers R1 and R2.
///
///   Fm = (s[top] + R1) ^ R2,  z = Fm ^ s[0],
///   R1' = s[mid] + R2,  R2' = sbox(R1),
///   new cell = XOR over taps of alpha^power * s[index].
struct MiniParams {
  int m = 4;
  int n = 4;
  unsigned polynomial = 0;  // 0 selects default_mini_polynomial(m)
  std::vector<MiniTap> taps{{0, 1}, {1, 0}, {3, 3}};
  int top = -1;  // -1 selects n - 1
  int mid = -1;  // -1 selects min(1, n - 1)
  std::vector<MiniWord> sbox;  // empty selects inversion in the field
  MiniArith arith = MiniArith::kModular;

  /// Throws InvalidArgument on any inconsistency.
  void validate() const;
  int top_index() const { return top < 0 ? n - 1 : top; }
  int mid_index() const { return mid < 0 ? (n > 1 ? 1 : 0) : mid; }
  int state_bits() const { return m * (n + 2); }
  MiniField field() const;
  std::vector<MiniWord> resolved_sbox() const;
};

/// Text config: lines `key=value` for m, n, polynomial, taps (`idx:pow,..`),
/// top, mid, sbox (inversion | identity | file path | hex list), arith.
MiniParams read_mini_params(std::istream& in, const std::filesystem::path& base_dir = {});

/// n LFSR words followed by R1 and R2.
struct MiniKeyState {
  std::vector<MiniWord> words;
  friend bool operator==(const MiniKeyState&, const MiniKeyState&) = default;
  friend auto operator<=>(const MiniKeyState&, const MiniKeyState&) = default;
};

class MiniSnow {
 public:
  /// Throws InvalidArgument when the key-state width does not match n + 2.
  MiniSnow(const MiniParams& params, const MiniKeyState& key_state);

  MiniWord step();
  std::vector<MiniWord> keystream(std::size_t count);
  /// Clocks the LFSR alone, leaving the FSM untouched.
  void lfsr_step();

  std::span<const MiniWord> lfsr() const { return lfsr_; }
  MiniWord r1() const { return r1_; }
  MiniWord r2() const { return r2_; }
  MiniKeyState key_state() const;
  /// Reloads LFSR and FSM from a packed key state (see encode_key_state).
  void reset(std::uint32_t packed);

 private:
  MiniWord add(MiniWord a, MiniWord b) const;
  MiniWord feedback() const;

  MiniParams params_;
  MiniWord mask_;
  int top_;
  std::vector<std::vector<MiniWord>> tap_tables_;
  std::vector<MiniWord> sbox_;
  std::vector<MiniWord> lfsr_;
  MiniWord r1_ = 0;
  MiniWord r2_ = 0;
};

/// Cycle length of the pure-LFSR orbit through `start`; requires m * n <= 24
/// and a nonzero start.
std::uint64_t mini_period(const MiniParams& params, std::span<const MiniWord> start);

/// Every key state whose keystream begins with `prefix`; requires m * (n + 2) <= 24.
/// Work is split over `workers` threads on disjoint ranges and merged in index order.
std::vector<MiniKeyState> mini_enumerate(const MiniParams& params, std::span<const MiniWord> prefix,
                                         unsigned workers = 1);

/// Packs a key state into an integer, word i at bit offset m * i.
std::uint32_t encode_key_state(const MiniParams& params, const MiniKeyState& ks);
MiniKeyState decode_key_state(const MiniParams& params, std::uint32_t index);

}  // namespace snowlab
