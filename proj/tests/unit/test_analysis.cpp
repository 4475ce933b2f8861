#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "snowlab/analysis/bias.hpp"
#include "snowlab/analysis/f2.hpp"
#include "snowlab/analysis/golomb.hpp"
#include "snowlab/analysis/linear_complexity.hpp"
#include "snowlab/analysis/relations.hpp"
#include "snowlab/errors.hpp"
#include "snowlab/sbox.hpp"

using namespace snowlab;

namespace {

std::size_t lowest(const std::bitset<256>& b) {
  std::size_t i = 0;
  while (!b[i]) ++i;
  return i;
}

// Number of independent quadratic equations in (x, S(x)), counted with an
// elimination written separately from the library.
std::size_t quadratic_relation_count(const ByteSBox& s) {
  constexpr std::size_t kCols = 137;
  std::vector<std::bitset<256>> cols;
  auto bit = [](unsigned v, int i) { return (v >> i) & 1u; };
  std::vector<std::function<unsigned(unsigned)>> vars;
  for (int i = 0; i < 8; ++i) vars.push_back([=](unsigned x) { return bit(x, i); });
  for (int i = 0; i < 8; ++i) vars.push_back([=, &s](unsigned x) { return bit(s(Byte(x)), i); });
  std::bitset<256> one;
  one.set();
  cols.push_back(one);
  for (auto& v : vars) {
    std::bitset<256> c;
    for (unsigned x = 0; x < 256; ++x) c[x] = v(x);
    cols.push_back(c);
  }
  for (std::size_t a = 1; a <= 16; ++a) {
    for (std::size_t b = a + 1; b <= 16; ++b) cols.push_back(cols[a] & cols[b]);
  }
  REQUIRE(cols.size() == kCols);
  std::size_t rank = 0;
  std::vector<std::bitset<256>> basis;
  for (auto c : cols) {
    for (const auto& b : basis) {
      const std::size_t pivot = lowest(b);
      if (c[pivot]) c ^= b;
    }
    if (c.any()) {
      const std::size_t pivot = lowest(c);
      for (auto& b : basis) {
        if (b[pivot]) b ^= c;
      }
      basis.push_back(c);
      ++rank;
    }
  }
  return kCols - rank;
}

std::vector<Bit> random_bits(std::size_t n, std::mt19937& rng) {
  std::vector<Bit> out(n);
  for (auto& b : out) b = Bit(rng() & 1);
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("Berlekamp-Massey on small sequences") {
    CHECK(berlekamp_massey(std::vector<Bit>(50, 0)).L == 0);

    std::vector<Bit> alt(40);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = Bit(i % 2 == 0);
    const auto r = berlekamp_massey(alt);
    CHECK(r.L == 2);
    CHECK(r.connection == std::vector<Bit>{1, 0, 1});

    std::vector<Bit> impulse(20, 0);
    impulse[7] = 1;
    CHECK(berlekamp_massey(impulse).L == 8);

    CHECK_THROWS_AS(berlekamp_massey(std::vector<Bit>{}), InvalidArgument);
  }

  TEST_CASE("Berlekamp-Massey regenerates random LFSR output") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t degree = 1 + rng() % 24;
      std::vector<Bit> conn = random_bits(degree + 1, rng);
      conn[0] = 1;
      conn[degree] = 1;
      const std::vector<Bit> fill = random_bits(degree, rng);
      const std::vector<Bit> seq = lfsr_sequence(conn, fill, 200);
      const auto r = berlekamp_massey(seq);
      REQUIRE(r.L <= degree);
      REQUIRE(r.profile.size() == seq.size());
      REQUIRE(r.profile.back() == r.L);
      const std::vector<Bit> head(seq.begin(), seq.begin() + std::ptrdiff_t(r.L));
      REQUIRE(lfsr_sequence(r.connection, head, seq.size()) == seq);
    }
  }

  TEST_CASE("m-sequences have full linear complexity") {
    for (int degree : {2, 5, 8, 16, 24}) {
      const auto seq = m_sequence(degree, std::size_t(4 * degree));
      const auto r = berlekamp_massey(seq);
      REQUIRE(r.L == std::size_t(degree));
      REQUIRE(r.connection == primitive_connection(degree));
    }
  }

  TEST_CASE("Golomb postulates on a degree 8 m-sequence") {
    const auto seq = m_sequence(8, 255);
    const GolombReport g = golomb_tests(seq, 255);
    CHECK(g.ones == 128);
    CHECK(g.zeros == 127);
    CHECK(g.balanced);
    CHECK(g.span);
    CHECK(g.two_level);
    CHECK(g.off_peak == -1);
    CHECK(g.total_runs == 128);
    CHECK(g.pass());
    for (long long c : g.autocorrelation) REQUIRE(c == -1);
  }

  TEST_CASE("Golomb postulates reject degenerate input") {
    const GolombReport zeros = golomb_tests(std::vector<Bit>(63, 0), 63);
    CHECK_FALSE(zeros.balanced);
    CHECK_FALSE(zeros.pass());

    std::mt19937 rng(32);
    const auto noise = random_bits(255, rng);
    CHECK_FALSE(golomb_tests(noise, 255).pass());

    CHECK_THROWS_AS(golomb_tests(std::vector<Bit>(10, 1), 11), InvalidArgument);
    CHECK_THROWS_AS(golomb_tests(std::vector<Bit>(10, 1), 0), InvalidArgument);
  }

  TEST_CASE("carry bit probabilities") {
    const CarryBiasResult c0 = carry_bias(0, 10000, 1);
    CHECK(c0.into.zeros == 10000);
    CHECK(c0.formula == doctest::Approx(1.0));
    CHECK(c0.into_matches);

    const CarryBiasResult c1 = carry_bias(1, 1000000, 7);
    CHECK(c1.formula == doctest::Approx(0.75));
    CHECK(c1.into.probability() == doctest::Approx(0.75).epsilon(0.005));
    CHECK(c1.into_matches);
    CHECK_FALSE(c1.out_of_matches);

    const CarryBiasResult c5 = carry_bias(5, 1000000, 8);
    CHECK(c5.into_matches);
    CHECK_THROWS_AS(carry_bias(32, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(carry_bias(1, 0, 1), InvalidArgument);
  }

  TEST_CASE("correlation of the identity and Parseval") {
    const auto id = [](std::uint32_t x) { return x; };
    CHECK(correlation_exhaustive(id, 8, {0x35, 0x35}) == 1.0);
    CHECK(correlation_exhaustive(id, 8, {0x35, 0x34}) == 0.0);
    CHECK(correlation_exhaustive(id, 8, {0, 0}) == 1.0);

    const ByteSBox aes = aes_sbox();
    const auto f = [&](std::uint32_t x) { return std::uint32_t{aes(Byte(x))}; };
    for (std::uint32_t t : {1u, 0x80u, 0xC3u}) {
      double sum = 0.0;
      for (std::uint32_t lambda = 0; lambda < 256; ++lambda) {
        const double c = correlation_exhaustive(f, 8, {t, lambda});
        sum += c * c;
        int agree = 0;
        for (unsigned x = 0; x < 256; ++x) {
          agree += (std::popcount(t & f(x)) & 1) == (std::popcount(lambda & x) & 1);
        }
        REQUIRE(c == doctest::Approx((2.0 * agree - 256.0) / 256.0));
        // AES S-box correlations are bounded by 2^-3.
        REQUIRE(std::abs(c) <= 0.125);
      }
      CHECK(sum == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(correlation_exhaustive(id, 17, {1, 1}), InvalidArgument);
  }

  TEST_CASE("fair coin relation stays within tolerance") {
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const BiasReport r = fsm_bias_mc(fair_coin_relation(), 65536, seed);
      within += std::abs(r.sigmas()) <= kToleranceSigma;
    }
    CHECK(within >= 99);
  }

  TEST_CASE("SNOW 1.0 FSM relation is biased in the LSB-zero reading") {
    const BiasReport r = fsm_bias_mc(snow1_fsm_relation(BitOrder::kLsbZero), std::uint64_t{1} << 24, 5, 4);
    CHECK(r.significant());
    CHECK(r.estimate < 0);
    CHECK(std::log2(std::abs(r.bias())) == doctest::Approx(-9.3).epsilon(0.05));
    CHECK(fsm_relation_by_id("snow1-fsm").id == "snow1-fsm");
    CHECK_THROWS_AS(fsm_relation_by_id("nope"), InvalidArgument);
  }

  TEST_CASE("Monte Carlo results do not depend on the worker count") {
    const FsmRelation rel = snow1_fsm_relation();
    const BiasReport w1 = fsm_bias_mc(rel, 300000, 9, 1);
    CHECK(fsm_bias_mc(rel, 300000, 9, 2).zeros == w1.zeros);
    CHECK(fsm_bias_mc(rel, 300000, 9, 8).zeros == w1.zeros);
    const CarryBiasResult c1 = carry_bias(3, 300000, 9, 1);
    CHECK(carry_bias(3, 300000, 9, 8).into.zeros == c1.into.zeros);
    CHECK(fsm_bias_mc(rel, 300000, 10, 1).zeros != w1.zeros);
  }

  TEST_CASE("counter RNG is a pure function of seed, stream and position") {
    CounterRng a(1, 2), b(1, 2), c(1, 3);
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next();
      REQUIRE(x == b.next());
      REQUIRE(x != c.next());
    }
  }

  TEST_CASE("quadratic relations") {
    const ByteSBox box = aes_sbox();
    const QuadraticRelations aes = sbox_quadratic_relations(box);
    CHECK(aes.count == 39);
    CHECK(aes.count == quadratic_relation_count(box));
    CHECK(aes.basis.size() == aes.count);
    for (const auto& rel : aes.basis) {
      for (unsigned x = 0; x < 256; ++x) {
        bool sum = false;
        for (std::size_t m = 0; m < kQuadraticMonomials; ++m) {
          if (rel.get(m)) sum ^= evaluate_monomial(m, Byte(x), box(Byte(x)));
        }
        REQUIRE_FALSE(sum);
      }
    }
    const ByteSBox id = ByteSBox::identity();
    CHECK(sbox_quadratic_relations(id).count == quadratic_relation_count(id));
    const ByteSBox sq = snow3g_sq_sbox();
    CHECK(sbox_quadratic_relations(sq).count == quadratic_relation_count(sq));
    CHECK(monomial_name(0) == "1");
  }

  TEST_CASE("F2 solver classification") {
    F2System ident(8);
    for (std::size_t i = 0; i < 8; ++i) {
      BitVector row(8);
      row.set(i);
      ident.add_row(row, i % 3 == 0);
    }
    const F2Solution s = gaussian_solve(ident);
    CHECK(s.status == SolveStatus::kUnique);
    CHECK(s.rank == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(s.solution.get(i) == (i % 3 == 0));

    F2System contra(2);
    BitVector x0(2);
    x0.set(0);
    contra.add_row(x0, false);
    contra.add_row(x0, true);
    CHECK(gaussian_solve(contra).status == SolveStatus::kInconsistent);

    F2System under(3);
    BitVector sum(3);
    sum.set(0);
    sum.set(2);
    under.add_row(sum, true);
    const F2Solution u = gaussian_solve(under);
    CHECK(u.status == SolveStatus::kUnderdetermined);
    CHECK(u.nullspace.size() == 2);

    CHECK_THROWS_AS(under.add_row(BitVector(4), false), InvalidArgument);
  }

  TEST_CASE("F2 solver agrees with brute force on random systems") {
    std::mt19937 rng(33);
    int unique_seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
      F2System sys(16);
      std::vector<std::uint32_t> masks;
      std::vector<bool> rhs;
      for (int r = 0; r < 20; ++r) {
        const std::uint32_t mask = rng() & 0xFFFF;
        BitVector row(16);
        for (std::size_t i = 0; i < 16; ++i) row.set(i, (mask >> i) & 1);
        const bool v = rng() & 1;
        sys.add_row(row, v);
        masks.push_back(mask);
        rhs.push_back(v);
      }
      std::vector<std::uint32_t> solutions;
      for (std::uint32_t x = 0; x < (1u << 16); ++x) {
        bool ok = true;
        for (std::size_t r = 0; r < masks.size() && ok; ++r) ok = ((std::popcount(masks[r] & x) & 1) == 1) == rhs[r];
        if (ok) solutions.push_back(x);
      }
      const F2Solution sol = gaussian_solve(sys);
      if (solutions.empty()) {
        REQUIRE(sol.status == SolveStatus::kInconsistent);
        continue;
      }
      REQUIRE(sol.status != SolveStatus::kInconsistent);
      REQUIRE(solutions.size() == (std::size_t{1} << (16 - sol.rank)));
      std::uint32_t particular = 0;
      for (std::size_t i = 0; i < 16; ++i) particular |= std::uint32_t(sol.solution.get(i)) << i;
      REQUIRE(std::find(solutions.begin(), solutions.end(), particular) != solutions.end());
      if (solutions.size() == 1) {
        REQUIRE(sol.status == SolveStatus::kUnique);
        ++unique_seen;
      }
    }
    CHECK(unique_seen > 0);
  }
}
