#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "oracles/snow1_oracle.hpp"
#include "oracles/snow2_oracle.hpp"
#include "oracles/snow3g_oracle.hpp"
#include "snowlab/errors.hpp"
#include "snowlab/sbox.hpp"

using namespace snowlab;

namespace {

bool is_permutation(const ByteSBox& s) {
  std::array<bool, 256> seen{};
  for (unsigned x = 0; x < 256; ++x) seen[s(Byte(x))] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

template <class F>
std::size_t distinct_on_low16(F f) {
  std::unordered_set<Word> images;
  for (Word x = 0; x < (1u << 16); ++x) images.insert(f(x));
  return images.size();
}

}  // namespace

TEST_SUITE("sboxes") {
  TEST_CASE("SNOW 1.0 byte map") {
    CHECK(snow1_byte_map(0x00) == 0x07);
    CHECK(snow1_byte_map(0x01) == 0x06);
    CHECK(is_permutation(snow1_byte_sbox()));
    for (unsigned y = 0; y < 256; ++y) REQUIRE(snow1_byte_map(Byte(y)) == oracle::snow1::byte_map(Byte(y)));
  }

  TEST_CASE("SNOW 1.0 word S-box and bit permutation") {
    const BitPermutation id;
    CHECK(snow1_sbox_word(0, id) == 0x07070707u);

    std::array<std::uint8_t, 32> dest{};
    std::iota(dest.begin(), dest.end(), std::uint8_t{0});
    std::mt19937 rng(2);
    std::shuffle(dest.begin(), dest.end(), rng);
    const BitPermutation perm(dest);
    const BitPermutation inv = perm.inverse();
    for (int i = 0; i < 1000; ++i) {
      const Word w = rng();
      const Word plain = snow1_sbox_word(w, id);
      const Word permuted = snow1_sbox_word(w, perm);
      for (int bit = 0; bit < 32; ++bit) {
        REQUIRE(((permuted >> bit) & 1) == ((plain >> inv.destination(bit)) & 1));
      }
    }
    CHECK(distinct_on_low16([&](Word x) { return snow1_sbox_word(x, perm); }) == (1u << 16));

    dest[0] = dest[1];
    CHECK_THROWS_AS(BitPermutation{dest}, InvalidArgument);
  }

  TEST_CASE("S1 against the matrix oracle") {
    std::mt19937 rng(4);
    for (int i = 0; i < 20000; ++i) {
      const Word w = rng();
      REQUIRE(s1_word(w) == oracle::snow2::s1(w));
      REQUIRE(snow2_s1().apply_naive(w) == s1_word(w));
    }
  }

  TEST_CASE("SNOW 2.0 S1 with b0 least significant equals the SNOW 3G S1") {
    std::mt19937 rng(6);
    for (int i = 0; i < 20000; ++i) {
      const Word w = rng();
      REQUIRE(snow2_s1()(w) == snow3g_s1()(w));
      REQUIRE(snow3g_s1()(w) == oracle::snow3g::s1(w));
    }
  }

  TEST_CASE("literal S1 variant") {
    CHECK(snow2_s1_literal()(0) == 0);
    std::mt19937 rng(8);
    for (int i = 0; i < 2000; ++i) {
      const Word w = rng();
      REQUIRE(snow2_s1_literal()(w) == snow2_s1_literal().apply_naive(w));
    }
    CHECK(distinct_on_low16([](Word x) { return snow2_s1_literal()(x); }) == (1u << 16));
  }

  TEST_CASE("S1 is a bijection on a sampled subspace and not linear") {
    CHECK(distinct_on_low16([](Word x) { return s1_word(x); }) == (1u << 16));
    bool witness = false;
    std::mt19937 rng(10);
    for (int i = 0; i < 16 && !witness; ++i) {
      const Word a = rng(), b = rng();
      witness = (s1_word(a) ^ s1_word(b)) != s1_word(a ^ b);
    }
    CHECK(witness);
  }

  TEST_CASE("S2 against the matrix oracle") {
    const Byte sq0 = snow3g_sq_sbox()(0);
    // Every matrix row sums to 1 (x + 1 + 1 + x + 1), so S2(0) repeats SQ(0) in each byte.
    CHECK(s2_word(0) == word_from_bytes(sq0, sq0, sq0, sq0));
    std::mt19937 rng(12);
    for (int i = 0; i < 20000; ++i) {
      const Word w = rng();
      REQUIRE(s2_word(w) == oracle::snow3g::s2(w));
      REQUIRE(snow3g_s2().apply_naive(w) == s2_word(w));
    }
    CHECK(distinct_on_low16([](Word x) { return s2_word(x); }) == (1u << 16));
  }

  TEST_CASE("byte S-boxes are permutations") {
    CHECK(is_permutation(aes_sbox()));
    CHECK(is_permutation(snow3g_sq_sbox()));
    CHECK(is_permutation(inversion_sbox(Gf8Modulus::snow2())));
    CHECK(aes_sbox()(0x00) == 0x63);
    CHECK(aes_sbox()(0x53) == 0xED);
    for (unsigned x = 0; x < 256; ++x) REQUIRE(snow3g_sq_sbox()(Byte(x)) == oracle::snow3g::sq(Byte(x)));
    const ByteSBox inv = aes_sbox().inverse();
    for (unsigned x = 0; x < 256; ++x) REQUIRE(inv(aes_sbox()(Byte(x))) == x);
  }

  TEST_CASE("S-box data files match the computed tables") {
    const std::string dir = SNOWLAB_DATA_DIR "/sboxes/";
    CHECK(load_sbox_file(dir + "aes.txt").table() == aes_sbox().table());
    CHECK(load_sbox_file(dir + "snow3g_sq.txt").table() == snow3g_sq_sbox().table());
    CHECK(load_sbox_file(dir + "snow1_map.txt").table() == snow1_byte_sbox().table());
  }

  TEST_CASE("S-box text round trip and validation") {
    std::stringstream io;
    write_sbox(io, snow3g_sq_sbox());
    CHECK(read_sbox(io).table() == snow3g_sq_sbox().table());

    std::stringstream bad;
    bad << "name=dup\n";
    for (int i = 0; i < 256; ++i) bad << "00 ";
    CHECK_THROWS(read_sbox(bad));

    std::stringstream shorty("name=short\n00 01 02\n");
    CHECK_THROWS_AS(read_sbox(shorty), ParseError);
  }

  TEST_CASE("mix matrices") {
    CHECK_NOTHROW(MixMatrix::circulant(Gf8Modulus::aes()));
    CHECK_NOTHROW(MixMatrix::literal(Gf8Modulus::snow2()));
    CHECK_NOTHROW(MixMatrix::threegpp(Gf8Modulus::snow3g_s2()));
    CHECK_THROWS_AS(MixMatrix({1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1}, Gf8Modulus::aes()), InvalidArgument);
    std::stringstream text("name=m\nmodulus=1b\n02 03 01 01 01 02 03 01 01 01 02 03 03 01 01 02\n");
    CHECK(read_matrix(text).entries() == MixMatrix::circulant(Gf8Modulus::aes()).entries());
  }
}
