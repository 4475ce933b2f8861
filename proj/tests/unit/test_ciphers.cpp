#include <algorithm>
#include <bit>
#include <random>

#include "doctest.h"
#include "oracles/snow1_oracle.hpp"
#include "oracles/snow2_oracle.hpp"
#include "oracles/snow3g_oracle.hpp"
#include "snowlab/analysis/fault.hpp"
#include "snowlab/errors.hpp"
#include "snowlab/snow1.hpp"
#include "snowlab/snow2.hpp"
#include "snowlab/snow3g.hpp"
#include "snowlab/vectors.hpp"

using namespace snowlab;

namespace {

template <std::size_t N>
std::array<Word, N> random_words(std::mt19937& rng) {
  std::array<Word, N> out{};
  for (Word& w : out) w = rng();
  return out;
}

std::vector<Word> to_vector(std::span<const Word> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_SUITE("ciphers") {
  TEST_CASE("SNOW 1.0 matches the reference model") {
    std::mt19937 rng(101);
    for (int pair = 0; pair < 100; ++pair) {
      Snow1Key k;
      k.key = random_words<8>(rng);
      k.iv = random_words<2>(rng);
      Snow1 c(k);
      REQUIRE(c.keystream(64) == oracle::snow1::keystream(k.key, k.iv[0], k.iv[1], 64));
    }
  }

  TEST_CASE("SNOW 2.0 matches the reference model") {
    std::mt19937 rng(202);
    for (int pair = 0; pair < 100; ++pair) {
      Snow2Key k;
      k.key = random_words<8>(rng);
      k.iv = random_words<4>(rng);
      Snow2 c(k);
      REQUIRE(c.keystream(64) == oracle::snow2::keystream(k.key, k.iv, 64));
    }
  }

  TEST_CASE("SNOW 2.0 polynomial path equals the table path") {
    std::mt19937 rng(203);
    Snow2Key k;
    k.key = random_words<8>(rng);
    k.iv = random_words<4>(rng);
    Snow2Options poly;
    poly.path = FieldPath::kPolynomial;
    CHECK(Snow2(k, poly).keystream(256) == Snow2(k).keystream(256));
  }

  TEST_CASE("SNOW 3G matches the reference model") {
    std::mt19937 rng(303);
    for (int pair = 0; pair < 100; ++pair) {
      Snow3gKey k;
      k.key = random_words<4>(rng);
      k.iv = random_words<4>(rng);
      Snow3g c(k);
      REQUIRE(c.keystream(64) == oracle::snow3g::keystream(k.key, k.iv, 64));
    }
  }

  TEST_CASE("SNOW 3G published test set") {
    Snow3gKey k;
    k.key = {0x2BD6459Fu, 0x82C5B300u, 0x952C4910u, 0x4881FF48u};
    k.iv = {0xEA024714u, 0xAD5C4D84u, 0xDF1F9B25u, 0x1C0BF45Fu};
    CHECK(Snow3g(k).keystream(2) == std::vector<Word>{0xABEE9704u, 0x7AC31373u});
  }

  TEST_CASE("snapshot and restore continue the same stream") {
    std::mt19937 rng(404);
    Snow3gKey k;
    k.key = random_words<4>(rng);
    k.iv = random_words<4>(rng);
    Snow3g a(k);
    a.keystream(10);
    const Snow3gSnapshot snap = a.snapshot();
    const std::vector<Word> tail = a.keystream(50);
    Snow3g b = Snow3g::restore(snap);
    CHECK(b.clock() == snap.clock());
    CHECK(b.keystream(50) == tail);

    Snow2 s2(Snow2Key{random_words<8>(rng), random_words<4>(rng)});
    Snow2 copy = Snow2::from_state(s2.state());
    CHECK(copy.keystream(20) == s2.keystream(20));
  }

  TEST_CASE("all-zero states") {
    // S1(0) is nonzero, so the FSM leaves the all-zero state after one clock.
    Snow2 s2 = Snow2::from_state(Snow2State{});
    const std::vector<Word> ks = s2.keystream(8);
    CHECK(ks[0] == 0);
    CHECK(std::any_of(ks.begin(), ks.end(), [](Word w) { return w != 0; }));

    Snow2Options lin;
    lin.linearized = true;
    Snow2 zero = Snow2::from_state(Snow2State{}, lin);
    for (Word w : zero.keystream(64)) REQUIRE(w == 0);
  }

  TEST_CASE("SNOW 2.0 keystream budget") {
    Snow2Options o;
    o.limit = 10;
    Snow2 c(Snow2Key{}, o);
    c.keystream(10);
    CHECK(c.produced() == 10);
    CHECK_THROWS_AS(c.step(), BudgetExhausted);

    KeystreamGenerator g(CipherId::kSnow2, std::vector<Word>(8, 1), std::vector<Word>(4, 2), 3);
    CHECK(g.take(3).size() == 3);
    CHECK_THROWS_AS(g.next(), BudgetExhausted);
  }

  TEST_CASE("encryption round trip") {
    std::mt19937 rng(505);
    const Snow2Key k{random_words<8>(rng), random_words<4>(rng)};
    std::vector<Byte> msg(37);
    for (Byte& b : msg) b = Byte(rng());
    const std::vector<Byte> ct = Snow2(k).encrypt(msg);
    CHECK(ct != msg);
    CHECK(Snow2(k).encrypt(ct) == msg);
    const Word z0 = Snow2(k).step();
    CHECK(Byte(ct[0] ^ msg[0]) == Byte(z0 >> 24));
  }

  TEST_CASE("keystream generator front end") {
    std::mt19937 rng(606);
    const auto key = random_words<4>(rng);
    const auto iv = random_words<4>(rng);
    KeystreamGenerator g(CipherId::kSnow3g, to_vector(key), to_vector(iv));
    g.skip(5);
    const std::vector<Word> expect = oracle::snow3g::keystream(key, iv, 9);
    CHECK(g.take(4) == std::vector<Word>(expect.begin() + 5, expect.end()));
    CHECK_THROWS_AS(KeystreamGenerator(CipherId::kSnow3g, {1, 2}, to_vector(iv)), InvalidArgument);
    CHECK(parse_cipher("snow1") == CipherId::kSnow1);
    CHECK_THROWS_AS(parse_cipher("snow4"), InvalidArgument);
  }

  TEST_CASE("single-bit R1 fault changes the next word from that bit upward") {
    std::mt19937 rng(707);
    for (int trial = 0; trial < 10000; ++trial) {
      Snow3gKey k;
      k.key = random_words<4>(rng);
      k.iv = random_words<4>(rng);
      const Snow3gSnapshot start = Snow3g(k).snapshot();
      FaultSpec f;
      f.target = FaultTarget::kR1;
      f.bit = int(rng() % 32);
      const Word clean = Snow3g::restore(start).step();
      const Word faulty = Snow3g::restore(inject_fault(start, f)).step();
      const Word diff = clean ^ faulty;
      REQUIRE(diff != 0);
      REQUIRE(std::countr_zero(diff) == f.bit);
    }
  }
}
