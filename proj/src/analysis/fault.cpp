#include "snowlab/analysis/fault.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "snowlab/analysis/bias.hpp"
#include "snowlab/analysis/f2.hpp"
#include "snowlab/analysis/fault_hook.hpp"

namespace snowlab {
namespace {

constexpr std::size_t kLfsrBits = 512;
constexpr std::size_t kFsmBits = 96;

Snow3gSnapshot basis_state(std::size_t j, bool fsm) {
  std::array<Word, 16> lfsr{};
  std::array<Word, 3> regs{};
  const Word bit = Word{1} << (j % 32);
  if (fsm) {
    regs[j / 32] = bit;
  } else {
    lfsr[j / 32] = bit;
  }
  return FaultHook::make(lfsr, regs[0], regs[1], regs[2], true);
}

void check_lfsr_faults(std::span<const FaultyRun> faulty) {
  for (const auto& run : faulty) {
    run.fault.validate();
    if (run.fault.target != FaultTarget::kLfsr) throw InvalidArgument("recovery supports LFSR-cell faults only");
  }
}

// Rows relate keystream differences to the 512 LFSR bits at clock 0. The cipher
// is linear, so the difference is D x ^ d with d the response of the zero state.
F2System build_fault_system(std::span<const Word> clean, std::span<const FaultyRun> faulty) {
  check_lfsr_faults(faulty);
  F2System sys(kLfsrBits);
  if (faulty.empty()) return sys;

  std::uint64_t horizon = 0;
  for (const auto& run : faulty) horizon = std::max(horizon, run.fault.time);

  auto differences = [&](const Snow3gSnapshot& start) {
    // Clean run with a snapshot at every clock up to the latest fault.
    std::vector<Snow3gSnapshot> at;
    at.reserve(horizon + 1);
    Snow3g c = Snow3g::restore(start);
    std::vector<Word> words;
    for (std::uint64_t t = 0; t <= horizon + kFaultRowWords; ++t) {
      if (t <= horizon) at.push_back(c.snapshot());
      words.push_back(c.step());
    }
    std::vector<Word> out;
    out.reserve(faulty.size() * kFaultRowWords);
    for (const auto& run : faulty) {
      Snow3g f = Snow3g::restore(inject_fault(at[run.fault.time], run.fault));
      for (std::size_t w = 0; w < kFaultRowWords; ++w) out.push_back(f.step() ^ words[run.fault.time + w]);
    }
    return out;
  };

  const std::vector<Word> offset = differences(FaultHook::make({}, 0, 0, 0, true));
  std::vector<std::vector<Word>> columns(kLfsrBits);
  for (std::size_t j = 0; j < kLfsrBits; ++j) columns[j] = differences(basis_state(j, false));

  for (std::size_t f = 0; f < faulty.size(); ++f) {
    const auto& run = faulty[f];
    for (std::size_t w = 0; w < kFaultRowWords; ++w) {
      const std::size_t t = run.fault.time + w;
      if (t >= clean.size() || t >= run.keystream.size()) break;
      const Word observed = run.keystream[t] ^ clean[t];
      const std::size_t k = f * kFaultRowWords + w;
      for (int b = 0; b < 32; ++b) {
        BitVector row(kLfsrBits);
        for (std::size_t j = 0; j < kLfsrBits; ++j) {
          if (((columns[j][k] ^ offset[k]) >> b) & 1) row.set(j);
        }
        sys.add_row(std::move(row), ((observed ^ offset[k]) >> b) & 1);
      }
    }
  }
  return sys;
}

std::array<Word, 16> words_from_bits(const BitVector& v, std::size_t offset, std::size_t count) {
  std::array<Word, 16> out{};
  for (std::size_t j = 0; j < count; ++j) {
    if (v.get(offset + j)) out[j / 32] |= Word{1} << (j % 32);
  }
  return out;
}

}  // namespace

void FaultSpec::validate() const {
  if (bit < 0 || bit >= 32) throw InvalidArgument("fault bit must be in 0..31");
  if (target == FaultTarget::kLfsr && (cell < 0 || cell >= 16)) throw InvalidArgument("LFSR cell must be in 0..15");
}

std::string describe(const FaultSpec& f) {
  std::string where;
  switch (f.target) {
    case FaultTarget::kR1: where = "R1"; break;
    case FaultTarget::kR2: where = "R2"; break;
    case FaultTarget::kR3: where = "R3"; break;
    case FaultTarget::kLfsr: where = "s" + std::to_string(f.cell); break;
  }
  const std::string what = f.model == FaultModel::kBitFlip ? "flip bit " + std::to_string(f.bit) : "reset";
  return what + " of " + where + " at t=" + std::to_string(f.time);
}

Snow3gSnapshot inject_fault(const Snow3gSnapshot& snapshot, const FaultSpec& fault) {
  fault.validate();
  Snow3gSnapshot out = snapshot;
  Word* target = nullptr;
  switch (fault.target) {
    case FaultTarget::kR1: target = &FaultHook::r1(out); break;
    case FaultTarget::kR2: target = &FaultHook::r2(out); break;
    case FaultTarget::kR3: target = &FaultHook::r3(out); break;
    case FaultTarget::kLfsr: target = &FaultHook::lfsr(out, fault.cell); break;
  }
  if (fault.model == FaultModel::kBitFlip) {
    *target ^= Word{1} << fault.bit;
  } else {
    *target = 0;
  }
  return out;
}

std::vector<Word> run_with_faults(const Snow3gSnapshot& start, std::span<const FaultSpec> faults, std::size_t words) {
  for (const auto& f : faults) f.validate();
  Snow3g cipher = Snow3g::restore(start);
  std::vector<Word> out;
  out.reserve(words);
  for (std::size_t t = 0; t < words; ++t) {
    for (const auto& f : faults) {
      if (f.time == start.clock() + t) cipher = Snow3g::restore(inject_fault(cipher.snapshot(), f));
    }
    out.push_back(cipher.step());
  }
  return out;
}

std::size_t fault_system_rank(std::span<const Word> clean, std::span<const FaultyRun> faulty) {
  return gaussian_solve(build_fault_system(clean, faulty)).rank;
}

LinearizedRecovery recover_state_linearized(std::span<const Word> clean, std::span<const FaultyRun> faulty) {
  const F2Solution sol = gaussian_solve(build_fault_system(clean, faulty));
  if (sol.status == SolveStatus::kInconsistent) throw Error("fault equations are inconsistent");
  if (sol.status != SolveStatus::kUnique) throw RankDeficient(sol.rank);

  LinearizedRecovery rec;
  rec.rank = sol.rank;
  rec.lfsr = words_from_bits(sol.solution, 0, kLfsrBits);

  // The FSM enters the clean keystream linearly; solve for it with the LFSR known.
  const std::size_t fsm_words = std::min<std::size_t>(clean.size(), 16);
  std::vector<Word> lfsr_only(fsm_words);
  Snow3g base = Snow3g::restore(FaultHook::make(rec.lfsr, 0, 0, 0, true));
  base.keystream(std::span<Word>(lfsr_only));
  std::vector<std::vector<Word>> columns(kFsmBits);
  for (std::size_t j = 0; j < kFsmBits; ++j) columns[j] = Snow3g::restore(basis_state(j, true)).keystream(fsm_words);
  F2System fsm(kFsmBits);
  for (std::size_t w = 0; w < fsm_words; ++w) {
    for (int b = 0; b < 32; ++b) {
      BitVector row(kFsmBits);
      for (std::size_t j = 0; j < kFsmBits; ++j) {
        if ((columns[j][w] >> b) & 1) row.set(j);
      }
      fsm.add_row(std::move(row), ((clean[w] ^ lfsr_only[w]) >> b) & 1);
    }
  }
  const F2Solution fsm_sol = gaussian_solve(fsm);
  if (fsm_sol.status == SolveStatus::kUnique) {
    const auto regs = words_from_bits(fsm_sol.solution, 0, kFsmBits);
    rec.fsm_recovered = true;
    rec.r1 = regs[0];
    rec.r2 = regs[1];
    rec.r3 = regs[2];
    Snow3g again = Snow3g::restore(FaultHook::make(rec.lfsr, rec.r1, rec.r2, rec.r3, true));
    rec.regenerates = again.keystream(clean.size()) == std::vector<Word>(clean.begin(), clean.end());
  }
  return rec;
}

FaultTrialSummary fault_recovery_trials(std::size_t trials, std::size_t faults, std::uint64_t seed, FaultModel model,
                                        unsigned workers) {
  constexpr std::uint64_t kWindow = 64;
  if (faults > kWindow) throw InvalidArgument("at most 64 faults fit the fault window");
  FaultTrialSummary summary;
  summary.trials = trials;
  summary.ranks.assign(trials, 0);
  std::vector<std::uint8_t> lfsr_ok(trials, 0), full_ok(trials, 0);

  auto one = [&](std::size_t t) {
    CounterRng rng(seed, t);
    std::array<Word, 16> lfsr{};
    for (Word& w : lfsr) w = rng.next_word();
    const Word r1 = rng.next_word(), r2 = rng.next_word(), r3 = rng.next_word();
    const Snow3gSnapshot planted = FaultHook::make(lfsr, r1, r2, r3, true);

    std::vector<std::uint64_t> times(kWindow);
    std::iota(times.begin(), times.end(), 0);
    for (std::size_t i = 0; i < faults; ++i) std::swap(times[i], times[i + rng.next() % (kWindow - i)]);
    times.resize(faults);
    std::sort(times.begin(), times.end());

    const std::size_t length = kWindow + kFaultRowWords;
    const std::vector<Word> clean = run_with_faults(planted, {}, length);
    std::vector<FaultyRun> runs;
    for (std::uint64_t time : times) {
      FaultSpec f{FaultTarget::kLfsr, 15, static_cast<int>(rng.next() % 32), time, model};
      runs.push_back({f, run_with_faults(planted, std::span<const FaultSpec>(&f, 1), length)});
    }
    try {
      const LinearizedRecovery rec = recover_state_linearized(clean, runs);
      summary.ranks[t] = rec.rank;
      lfsr_ok[t] = rec.lfsr == lfsr;
      full_ok[t] = lfsr_ok[t] && rec.fsm_recovered && rec.regenerates && rec.r1 == r1 && rec.r2 == r2 && rec.r3 == r3;
    } catch (const RankDeficient& e) {
      summary.ranks[t] = e.rank();
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) one(t);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers) one(t);
      });
    }
  }
  for (std::size_t t = 0; t < trials; ++t) {
    summary.successes += lfsr_ok[t];
    summary.full_state += full_ok[t];
  }
  return summary;
}

}  // namespace snowlab
