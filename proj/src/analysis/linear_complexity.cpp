#include "snowlab/analysis/linear_complexity.hpp"

#include <algorithm>
#include <string>

#include "snowlab/errors.hpp"

namespace snowlab {

LinearComplexityResult berlekamp_massey(std::span<const Bit> bits) {
  if (bits.empty()) throw InvalidArgument("Berlekamp-Massey needs a nonempty sequence");
  const std::size_t n = bits.size();
  std::vector<Bit> c(n + 1, 0), b(n + 1, 0);
  c[0] = b[0] = 1;
  std::size_t L = 0;
  std::size_t shift = 1;  // steps since b was last updated
  LinearComplexityResult out;
  out.profile.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    Bit d = bits[k] & 1;
    for (std::size_t i = 1; i <= L; ++i) d ^= c[i] & bits[k - i];
    if (d == 0) {
      ++shift;
    } else if (2 * L <= k) {
      const std::vector<Bit> previous = c;
      for (std::size_t i = 0; i + shift <= n; ++i) c[i + shift] ^= b[i];
      L = k + 1 - L;
      b = previous;
      shift = 1;
    } else {
      for (std::size_t i = 0; i + shift <= n; ++i) c[i + shift] ^= b[i];
      ++shift;
    }
    out.profile.push_back(L);
  }
  out.L = L;
  out.connection.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(L + 1));
  return out;
}

std::vector<Bit> lfsr_sequence(std::span<const Bit> connection, std::span<const Bit> fill, std::size_t length) {
  const std::size_t L = connection.empty() ? 0 : connection.size() - 1;
  if (fill.size() < L) throw InvalidArgument("initial fill shorter than the LFSR length");
  std::vector<Bit> out(fill.begin(), fill.begin() + static_cast<std::ptrdiff_t>(std::min(L, length)));
  out.reserve(length);
  while (out.size() < length) {
    const std::size_t j = out.size();
    Bit v = 0;
    for (std::size_t i = 1; i <= L; ++i) v ^= connection[i] & out[j - i];
    out.push_back(v);
  }
  return out;
}

std::vector<Bit> primitive_connection(int degree) {
  // Feedback taps per degree, highest first.
  static const std::vector<std::vector<int>> kTaps{
      {}, {}, {2, 1}, {3, 2}, {4, 3}, {5, 3}, {6, 5}, {7, 6}, {8, 6, 5, 4}, {9, 5}, {10, 7}, {11, 9},
      {12, 6, 4, 1}, {13, 4, 3, 1}, {14, 5, 3, 1}, {15, 14}, {16, 15, 13, 4}, {17, 14}, {18, 11},
      {19, 6, 2, 1}, {20, 17}, {21, 19}, {22, 21}, {23, 18}, {24, 23, 22, 17},
  };
  if (degree < 2 || degree > 24) throw InvalidArgument("no built-in primitive polynomial of degree " + std::to_string(degree));
  std::vector<Bit> c(static_cast<std::size_t>(degree) + 1, 0);
  c[0] = 1;
  for (int t : kTaps[static_cast<std::size_t>(degree)]) c[static_cast<std::size_t>(t)] = 1;
  return c;
}

std::vector<Bit> m_sequence(int degree, std::size_t length) {
  const std::vector<Bit> c = primitive_connection(degree);
  std::vector<Bit> fill(static_cast<std::size_t>(degree), 0);
  fill[0] = 1;
  return lfsr_sequence(c, fill, length);
}

}  // namespace snowlab
