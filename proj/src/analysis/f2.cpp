#include "snowlab/analysis/f2.hpp"

#include <bit>

#include "snowlab/errors.hpp"

namespace snowlab {

BitVector& BitVector::operator^=(const BitVector& o) {
  for (std::size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= o.limbs_[i];
  return *this;
}

bool BitVector::any() const {
  for (auto l : limbs_) {
    if (l != 0) return true;
  }
  return false;
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (auto l : limbs_) c += static_cast<std::size_t>(std::popcount(l));
  return c;
}

std::size_t BitVector::first_set() const {
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    if (limbs_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(limbs_[i]));
  }
  return size_;
}

bool BitVector::dot(const BitVector& o) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) acc ^= limbs_[i] & o.limbs_[i];
  return std::popcount(acc) & 1;
}

void F2System::add_row(BitVector row, bool value) {
  if (row.size() != ncols) throw InvalidArgument("row width does not match the column count");
  rows.push_back(std::move(row));
  rhs.push_back(value);
}

F2Solution gaussian_solve(const F2System& system) {
  const std::size_t n = system.ncols;
  // Augmented rows: column n carries the right-hand side.
  std::vector<BitVector> a;
  a.reserve(system.rows.size());
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    BitVector row(n + 1);
    for (std::size_t i = 0; i < system.rows[r].limbs().size(); ++i) row.limbs()[i] = system.rows[r].limbs()[i];
    row.set(n, system.rhs[r]);
    a.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.size() && !a[pivot].get(col)) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r != rank && a[r].get(col)) a[r] ^= a[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  F2Solution out;
  out.rank = rank;
  for (std::size_t r = rank; r < a.size(); ++r) {
    if (a[r].get(n)) {
      out.status = SolveStatus::kInconsistent;
      return out;
    }
  }
  out.solution = BitVector(n);
  for (std::size_t r = 0; r < rank; ++r) out.solution.set(pivot_col[r], a[r].get(n));
  if (rank == n) {
    out.status = SolveStatus::kUnique;
    return out;
  }
  out.status = SolveStatus::kUnderdetermined;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitVector v(n);
    v.set(free);
    for (std::size_t r = 0; r < rank; ++r) {
      if (a[r].get(free)) v.set(pivot_col[r]);
    }
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::size_t f2_rank(std::vector<BitVector> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t lead = rows[i].first_set();
    if (lead == rows[i].size()) continue;
    ++rank;
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j].get(lead)) rows[j] ^= rows[i];
    }
  }
  return rank;
}

}  // namespace snowlab
