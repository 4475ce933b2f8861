#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snowlab/errors.hpp"
#include "snowlab/mini_snow.hpp"

namespace snowlab {

/// A word of the mini cipher's unrolled execution over the keystream window.
struct GdVariable {
  enum class Kind { kLfsr, kSum, kR1, kR2 };  // kSum is s[t + top] + R1_t
  Kind kind = Kind::kLfsr;
  int time = 0;
  std::string name() const;
  friend bool operator==(const GdVariable&, const GdVariable&) = default;
};

class NoConsistentState : public Error {
 public:
  NoConsistentState() : Error("no state of these parameters produces the keystream") {}
};

struct GdResult {
  std::vector<GdVariable> basis;
  std::size_t basis_bits = 0;
  /// Assignments tried: one per basis value, times 2^(m * k) when k key-state
  /// words stayed undetermined and had to be guessed as well.
  std::uint64_t guesses = 0;
  std::uint64_t contradictions = 0;
  std::uint64_t undetermined = 0;  // basis values that needed extra guessing
  std::uint64_t probes = 0;        // single-word trial propagations
  std::vector<MiniKeyState> consistent;
  MiniKeyState recovered;  // first consistent state
};

/// Smallest set of window words from which propagation determines the key state:
/// XOR with the keystream, + (any two of three), the S-box (either side), the
/// feedback recurrence (all but one word), and F2 span of known LFSR words.
std::vector<GdVariable> gd_find_basis(const MiniParams& params, std::size_t window);

/// Smallest candidate set that leaves no key-state word open for any assignment once
/// single-word probing is added, judged on `references` seeded reference states of
/// the attacker's own. Keystream-independent for the attacked target.
std::vector<GdVariable> gd_find_basis_probing(const MiniParams& params, std::size_t window,
                                              std::size_t references = 4);

/// Guesses every assignment of the basis and propagates. With `probe`, each unknown
/// word is then tried at every value and fixed when exactly one value survives
/// propagation. Key-state words left open are guessed exhaustively; every
/// resulting state is checked against the whole keystream. An empty basis selects
/// gd_find_basis_probing (or gd_find_basis without probing).
/// Requires m * (n + 2) <= 24. Throws NoConsistentState when nothing matches.
GdResult gd_attack_mini(const MiniParams& params, std::span<const MiniWord> keystream,
                        const std::vector<GdVariable>& basis = {}, bool probe = true);

}  // namespace snowlab
