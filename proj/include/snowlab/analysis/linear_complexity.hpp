#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace snowlab {

using Bit = std::uint8_t;

/// Connection polynomial C(x) = 1 + c1 x + .. + cL x^L, stored as connection[i] = c_i,
/// so s_j = c1 s_{j-1} ^ .. ^ cL s_{j-L}.
struct LinearComplexityResult {
  std::size_t L = 0;
  std::vector<Bit> connection{1};
  /// profile[k] is the linear complexity of the first k + 1 bits.
  std::vector<std::size_t> profile;
};

/// Throws InvalidArgument on an empty sequence.
LinearComplexityResult berlekamp_massey(std::span<const Bit> bits);

/// Runs the LFSR with the given connection polynomial from `fill` (its first L bits)
/// and returns `length` bits, starting with the fill itself.
std::vector<Bit> lfsr_sequence(std::span<const Bit> connection, std::span<const Bit> fill, std::size_t length);

/// Connection polynomial of a known primitive trinomial or pentanomial, 2 <= degree <= 24.
std::vector<Bit> primitive_connection(int degree);

/// `length` bits of the maximal-length sequence of that degree from the fill 100..0.
std::vector<Bit> m_sequence(int degree, std::size_t length);

}  // namespace snowlab
