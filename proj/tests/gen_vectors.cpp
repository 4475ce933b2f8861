// Writes a vector file whose expected keystreams come from the reference models.
// Usage: gen_vectors <out> [pairs-per-cipher] [seed]

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "oracles/snow1_oracle.hpp"
#include "oracles/snow2_oracle.hpp"
#include "oracles/snow3g_oracle.hpp"

namespace {

std::string hex(std::uint32_t w) {
  char b[9];
  std::snprintf(b, sizeof b, "%08X", w);
  return b;
}

template <class C>
std::string joined(const C& words, const char* sep) {
  std::string s;
  for (auto w : words) s += (s.empty() ? "" : sep) + hex(w);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: gen_vectors <out> [pairs] [seed]\n";
    return 2;
  }
  const int pairs = argc > 2 ? std::atoi(argv[2]) : 4;
  std::mt19937 rng(argc > 3 ? std::uint32_t(std::atoi(argv[3])) : 1u);
  std::ofstream out(argv[1]);
  if (!out) return 4;
  out << "# generated by gen_vectors from the reference models\n";
  for (int i = 0; i < pairs; ++i) {
    std::array<std::uint32_t, 8> k8{};
    for (auto& w : k8) w = rng();
    const std::uint32_t iv2 = rng(), iv1 = rng();
    out << "cipher=snow1 key=" << joined(k8, "") << " iv=" << hex(iv2) << hex(iv1) << " discard=0 ks="
        << joined(oracle::snow1::keystream(k8, iv2, iv1, 8), " ") << "\n";

    std::array<std::uint32_t, 4> iv4{};
    for (auto& w : iv4) w = rng();
    const auto ks2 = oracle::snow2::keystream(k8, iv4, 11);
    out << "cipher=snow2 key=" << joined(k8, "") << " iv=" << joined(iv4, "") << " discard=3 ks="
        << joined(std::vector<std::uint32_t>(ks2.begin() + 3, ks2.end()), " ") << "\n";

    std::array<std::uint32_t, 4> k4{};
    for (auto& w : k4) w = rng();
    out << "cipher=snow3g key=" << joined(k4, "") << " iv=" << joined(iv4, "") << " discard=0 ks="
        << joined(oracle::snow3g::keystream(k4, iv4, 8), " ") << "\n";
  }
  return out ? 0 : 4;
}
