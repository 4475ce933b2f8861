#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "snowlab/analysis/f2.hpp"
#include "snowlab/sbox.hpp"

namespace snowlab {

/// Monomials of degree <= 2 in x0..x7 (input bits) and y0..y7 (output bits):
/// index 0 is the constant, 1..16 the variables, then the 120 products.
inline constexpr std::size_t kQuadraticMonomials = 1 + 16 + 120;

std::string monomial_name(std::size_t index);

struct QuadraticRelations {
  std::size_t count = 0;
  std::size_t rank = 0;  // rank of the 256 x 137 evaluation matrix
  /// Each vector selects monomials whose sum vanishes on every (x, S(x)).
  std::vector<BitVector> basis;
};

QuadraticRelations sbox_quadratic_relations(const ByteSBox& sbox);

/// Evaluation of monomial `index` at the pair (x, y).
bool evaluate_monomial(std::size_t index, Byte x, Byte y);

}  // namespace snowlab
