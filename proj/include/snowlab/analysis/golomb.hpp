#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snowlab/analysis/linear_complexity.hpp"

namespace snowlab {

struct GolombReport {
  std::size_t period = 0;
  std::size_t ones = 0;
  std::size_t zeros = 0;
  bool balanced = false;

  /// Cyclic runs over one period; index k holds runs of length k + 1.
  std::vector<std::size_t> runs_of_ones;
  std::vector<std::size_t> runs_of_zeros;
  std::size_t total_runs = 0;
  bool run_distribution = false;
  /// True when period = 2^k - 1 and every nonzero k-tuple occurs exactly once.
  bool span_property = false;
  bool span = false;  // run_distribution && span_property

  /// Unnormalized out-of-phase autocorrelation values, one per shift 1..period-1.
  std::vector<long long> autocorrelation;
  bool two_level = false;
  long long off_peak = 0;

  bool pass() const { return balanced && span && two_level; }
};

/// Throws InvalidArgument when period is zero or exceeds the data.
GolombReport golomb_tests(std::span<const Bit> seq, std::size_t period);

}  // namespace snowlab
