#include "snowlab/analysis/relations.hpp"

#include <array>
#include <utility>

namespace snowlab {
namespace {

// Variable v in 0..15: x bits first, then y bits.
std::string variable_name(std::size_t v) { return (v < 8 ? "x" : "y") + std::to_string(v % 8); }

const std::array<std::pair<std::size_t, std::size_t>, 120>& products() {
  static const auto table = [] {
    std::array<std::pair<std::size_t, std::size_t>, 120> t{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 16; ++i) {
      for (std::size_t j = i + 1; j < 16; ++j) t[k++] = {i, j};
    }
    return t;
  }();
  return table;
}

}  // namespace

std::string monomial_name(std::size_t index) {
  if (index == 0) return "1";
  if (index <= 16) return variable_name(index - 1);
  const auto [i, j] = products().at(index - 17);
  return variable_name(i) + "*" + variable_name(j);
}

bool evaluate_monomial(std::size_t index, Byte x, Byte y) {
  const unsigned bits = x | (unsigned{y} << 8);
  if (index == 0) return true;
  if (index <= 16) return (bits >> (index - 1)) & 1;
  const auto [i, j] = products().at(index - 17);
  return ((bits >> i) & (bits >> j)) & 1;
}

QuadraticRelations sbox_quadratic_relations(const ByteSBox& sbox) {
  F2System system(kQuadraticMonomials);
  for (unsigned x = 0; x < 256; ++x) {
    BitVector row(kQuadraticMonomials);
    const Byte y = sbox(static_cast<Byte>(x));
    for (std::size_t k = 0; k < kQuadraticMonomials; ++k) {
      if (evaluate_monomial(k, static_cast<Byte>(x), y)) row.set(k);
    }
    system.add_row(std::move(row), false);
  }
  const F2Solution sol = gaussian_solve(system);
  QuadraticRelations out;
  out.rank = sol.rank;
  out.count = kQuadraticMonomials - sol.rank;
  out.basis = sol.nullspace;
  return out;
}

}  // namespace snowlab
