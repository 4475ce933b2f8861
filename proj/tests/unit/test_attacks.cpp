#include <algorithm>
#include <random>

#include "doctest.h"
#include "snowlab/analysis/fault.hpp"
#include "snowlab/analysis/fault_hook.hpp"
#include "snowlab/analysis/guess_determine.hpp"
#include "snowlab/mini_snow.hpp"

using namespace snowlab;

namespace {

Snow3gSnapshot random_snapshot(std::mt19937& rng, bool linearized) {
  std::array<Word, 16> lfsr{};
  for (Word& w : lfsr) w = rng();
  return FaultHook::make(lfsr, rng(), rng(), rng(), linearized);
}

}  // namespace

TEST_SUITE("attacks") {
  TEST_CASE("bit-flip injection is an involution and leaves the input alone") {
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
      const Snow3gSnapshot s = random_snapshot(rng, false);
      FaultSpec f;
      f.target = static_cast<FaultTarget>(rng() % 4);
      f.cell = int(rng() % 16);
      f.bit = int(rng() % 32);
      const Snow3gSnapshot copy = s;
      const Snow3gSnapshot once = inject_fault(s, f);
      REQUIRE(s == copy);
      REQUIRE_FALSE(once == s);
      REQUIRE(inject_fault(once, f) == s);
    }
    FaultSpec bad;
    bad.bit = 32;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad.bit = 0;
    bad.cell = 16;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  }

  TEST_CASE("a run without faults is the clean keystream") {
    std::mt19937 rng(42);
    const Snow3gSnapshot s = random_snapshot(rng, false);
    CHECK(run_with_faults(s, {}, 40) == Snow3g::restore(s).keystream(40));
  }

  TEST_CASE("an LFSR fault reaches the keystream within 17 clocks") {
    std::mt19937 rng(43);
    for (int i = 0; i < 500; ++i) {
      const Snow3gSnapshot s = random_snapshot(rng, false);
      FaultSpec f;
      f.cell = int(rng() % 16);
      f.bit = int(rng() % 32);
      f.time = rng() % 8;
      const std::vector<FaultSpec> faults{f};
      const auto clean = Snow3g::restore(s).keystream(f.time + 17);
      const auto faulty = run_with_faults(s, faults, f.time + 17);
      for (std::size_t t = 0; t < f.time; ++t) REQUIRE(clean[t] == faulty[t]);
      bool differs = false;
      for (std::size_t t = f.time; t < clean.size(); ++t) differs = differs || clean[t] != faulty[t];
      REQUIRE(differs);
    }
  }

  TEST_CASE("recovery needs fault equations") {
    std::mt19937 rng(44);
    const auto clean = Snow3g::restore(random_snapshot(rng, true)).keystream(64);
    CHECK_THROWS_AS(recover_state_linearized(clean, {}), RankDeficient);
  }

  TEST_CASE("bit flips give no information on the linearized cipher") {
    const FaultTrialSummary s = fault_recovery_trials(3, 24, 5, FaultModel::kBitFlip);
    CHECK(s.successes == 0);
    for (std::size_t r : s.ranks) CHECK(r == 0);
  }

  TEST_CASE("word-reset faults recover the linearized state") {
    const FaultTrialSummary s = fault_recovery_trials(50, 24, 6, FaultModel::kWordReset, 4);
    CHECK(s.trials == 50);
    CHECK(s.successes == 50);
    CHECK(s.full_state == 50);
    for (std::size_t r : s.ranks) CHECK(r == 512);
    const FaultTrialSummary again = fault_recovery_trials(50, 24, 6, FaultModel::kWordReset, 1);
    CHECK(again.ranks == s.ranks);
    CHECK(again.successes == s.successes);
  }

  TEST_CASE("guess and determine recovers a planted mini state") {
    const MiniParams p;
    std::mt19937 rng(45);
    for (int trial = 0; trial < 3; ++trial) {
      MiniKeyState planted;
      for (int i = 0; i < p.n + 2; ++i) planted.words.push_back(MiniWord(rng() & 0xF));
      const auto ks = MiniSnow(p, planted).keystream(12);
      const GdResult r = gd_attack_mini(p, ks);
      REQUIRE(std::find(r.consistent.begin(), r.consistent.end(), planted) != r.consistent.end());
      REQUIRE(r.consistent == mini_enumerate(p, ks, 4));
      REQUIRE(r.guesses <= (std::uint64_t{1} << r.basis_bits));
      for (const auto& s : r.consistent) REQUIRE(MiniSnow(p, s).keystream(12) == ks);
    }
  }

  TEST_CASE("guess and determine rejects an inconsistent keystream") {
    const MiniParams p;
    const MiniKeyState planted{{1, 2, 3, 4, 5, 6}};
    auto ks = MiniSnow(p, planted).keystream(12);
    std::vector<MiniWord> bad = ks;
    bool rejected = false;
    for (int flip = 0; flip < 16 && !rejected; ++flip) {
      bad = ks;
      bad[11] ^= MiniWord(1 + flip % 15);
      bad[10] ^= MiniWord(flip);
      if (!mini_enumerate(p, bad, 4).empty()) continue;
      CHECK_THROWS_AS(gd_attack_mini(p, bad), NoConsistentState);
      rejected = true;
    }
    CHECK(rejected);
  }

  TEST_CASE("variable naming") {
    CHECK(GdVariable{GdVariable::Kind::kLfsr, 3}.name() != GdVariable{GdVariable::Kind::kR1, 3}.name());
  }
}
