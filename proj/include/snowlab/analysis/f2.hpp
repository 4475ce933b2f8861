#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace snowlab {

/// Fixed-length vector over F2, packed 64 bits per limb.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), limbs_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (limbs_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    limbs_[i / 64] = v ? (limbs_[i / 64] | bit) : (limbs_[i / 64] & ~bit);
  }
  void flip(std::size_t i) { limbs_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  BitVector& operator^=(const BitVector& o);
  bool any() const;
  std::size_t popcount() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t first_set() const;
  bool dot(const BitVector& o) const;
  std::vector<std::uint64_t>& limbs() { return limbs_; }
  const std::vector<std::uint64_t>& limbs() const { return limbs_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> limbs_;
};

/// rows * x = rhs over F2.
struct F2System {
  std::size_t ncols = 0;
  std::vector<BitVector> rows;
  std::vector<bool> rhs;

  explicit F2System(std::size_t columns = 0) : ncols(columns) {}
  /// Throws InvalidArgument when the row width differs from ncols.
  void add_row(BitVector row, bool value);
};

enum class SolveStatus { kUnique, kUnderdetermined, kInconsistent };

struct F2Solution {
  SolveStatus status = SolveStatus::kInconsistent;
  std::size_t rank = 0;
  /// A particular solution (free variables zero); empty when inconsistent.
  BitVector solution;
  /// Basis of the homogeneous solution space; empty when unique or inconsistent.
  std::vector<BitVector> nullspace;
};

/// Reduced row echelon elimination with classification.
F2Solution gaussian_solve(const F2System& system);

std::size_t f2_rank(std::vector<BitVector> rows);

}  // namespace snowlab
