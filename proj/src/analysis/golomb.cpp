#include "snowlab/analysis/golomb.hpp"

#include <bit>

#include "snowlab/errors.hpp"

namespace snowlab {
namespace {

class PackedBits {
 public:
  explicit PackedBits(std::size_t size) : words_((size + 63) / 64 + 1, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::uint64_t window(std::size_t offset) const {
    const std::size_t q = offset / 64;
    const unsigned r = offset % 64;
    if (r == 0) return words_[q];
    return (words_[q] >> r) | (words_[q + 1] << (64 - r));
  }

 private:
  std::vector<std::uint64_t> words_;
};

void tally_runs(std::span<const Bit> s, GolombReport& rep) {
  const std::size_t p = s.size();
  std::size_t start = p;
  for (std::size_t i = 0; i < p; ++i) {
    if (s[i] != s[(i + p - 1) % p]) {
      start = i;
      break;
    }
  }
  if (start == p) return;  // constant: no run boundaries
  std::size_t i = 0;
  while (i < p) {
    const Bit v = s[(start + i) % p];
    std::size_t len = 0;
    while (i < p && s[(start + i) % p] == v) {
      ++len;
      ++i;
    }
    auto& bucket = v ? rep.runs_of_ones : rep.runs_of_zeros;
    if (bucket.size() < len) bucket.resize(len, 0);
    ++bucket[len - 1];
    ++rep.total_runs;
  }
}

}  // namespace

GolombReport golomb_tests(std::span<const Bit> seq, std::size_t period) {
  if (period == 0) throw InvalidArgument("period must be positive");
  if (period > seq.size()) throw InvalidArgument("period is longer than the supplied data");
  const auto s = seq.first(period);
  GolombReport rep;
  rep.period = period;

  for (Bit b : s) (b & 1 ? rep.ones : rep.zeros)++;
  rep.balanced = (rep.ones > rep.zeros ? rep.ones - rep.zeros : rep.zeros - rep.ones) <= 1;

  tally_runs(s, rep);
  rep.run_distribution = rep.total_runs > 0;
  for (std::size_t k = 1; rep.run_distribution && (std::size_t{2} << k) <= rep.total_runs; ++k) {
    const std::size_t ones = k <= rep.runs_of_ones.size() ? rep.runs_of_ones[k - 1] : 0;
    const std::size_t zeros = k <= rep.runs_of_zeros.size() ? rep.runs_of_zeros[k - 1] : 0;
    if (ones + zeros != rep.total_runs >> k || ones != zeros) rep.run_distribution = false;
  }

  if (std::has_single_bit(period + 1) && period > 1) {
    const int k = std::countr_zero(period + 1);
    std::vector<std::uint32_t> seen(std::size_t{1} << k, 0);
    std::uint32_t window = 0;
    for (std::size_t i = 0; i < period + static_cast<std::size_t>(k) - 1; ++i) {
      window = ((window << 1) | (s[i % period] & 1)) & ((1u << k) - 1);
      if (i + 1 >= static_cast<std::size_t>(k)) ++seen[window];
    }
    rep.span_property = seen[0] == 0;
    for (std::size_t t = 1; t < seen.size(); ++t) rep.span_property = rep.span_property && seen[t] == 1;
  }
  rep.span = rep.run_distribution && rep.span_property;

  PackedBits packed(2 * period);
  for (std::size_t i = 0; i < 2 * period; ++i) {
    if (s[i % period] & 1) packed.set(i);
  }
  rep.autocorrelation.reserve(period - 1);
  for (std::size_t tau = 1; tau < period; ++tau) {
    std::size_t disagreements = 0;
    for (std::size_t j = 0; j < period; j += 64) {
      std::uint64_t diff = packed.window(j) ^ packed.window(j + tau);
      if (period - j < 64) diff &= (std::uint64_t{1} << (period - j)) - 1;
      disagreements += static_cast<std::size_t>(std::popcount(diff));
    }
    rep.autocorrelation.push_back(static_cast<long long>(period) - 2 * static_cast<long long>(disagreements));
  }
  rep.two_level = period > 1;
  if (!rep.autocorrelation.empty()) {
    rep.off_peak = rep.autocorrelation.front();
    for (long long v : rep.autocorrelation) rep.two_level = rep.two_level && v == rep.off_peak;
    rep.two_level = rep.two_level && rep.off_peak != static_cast<long long>(period);
  }
  return rep;
}

}  // namespace snowlab
