#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snowlab/errors.hpp"
#include "snowlab/snow3g.hpp"

namespace snowlab {

enum class FaultTarget { kR1, kR2, kR3, kLfsr };

enum class FaultModel {
  kBitFlip,    // XOR one bit
  kWordReset,  // force the whole target word to zero
};

struct FaultSpec {
  FaultTarget target = FaultTarget::kLfsr;
  int cell = 0;  // LFSR cell, used when target == kLfsr
  int bit = 0;   // used by kBitFlip
  std::uint64_t time = 0;  // keystream clock before which the fault strikes
  FaultModel model = FaultModel::kBitFlip;

  /// Throws InvalidArgument for bit >= 32 or a cell outside 0..15.
  void validate() const;
};

std::string describe(const FaultSpec& f);

/// Applies the fault to a copy; the argument is left untouched.
Snow3gSnapshot inject_fault(const Snow3gSnapshot& snapshot, const FaultSpec& fault);

/// Keystream of `words` words from `start`, striking each fault when the clock reaches its time.
std::vector<Word> run_with_faults(const Snow3gSnapshot& start, std::span<const FaultSpec> faults, std::size_t words);

struct FaultyRun {
  FaultSpec fault;
  std::vector<Word> keystream;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(std::size_t rank)
      : Error("fault equations reach rank " + std::to_string(rank) + " of 512"), rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

struct LinearizedRecovery {
  std::size_t rank = 0;
  std::array<Word, 16> lfsr{};
  bool fsm_recovered = false;
  Word r1 = 0;
  Word r2 = 0;
  Word r3 = 0;
  bool regenerates = false;  // recovered state reproduces the clean keystream
};

/// Keystream words per fault that contribute equations.
inline constexpr std::size_t kFaultRowWords = 4;

/// Solves for the 512 LFSR bits at clock 0 of a linearized SNOW 3G run, then for
/// the FSM registers. Faults must target LFSR cells. Throws RankDeficient below rank 512.
LinearizedRecovery recover_state_linearized(std::span<const Word> clean, std::span<const FaultyRun> faulty);

/// Rank of the fault system without solving it.
std::size_t fault_system_rank(std::span<const Word> clean, std::span<const FaultyRun> faulty);

struct FaultTrialSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;      // planted LFSR recovered exactly
  std::size_t full_state = 0;     // LFSR and FSM recovered and keystream regenerated
  std::vector<std::size_t> ranks;
};

/// Plants random linearized states and recovers them from `faults` faults on cell 15
/// at distinct random times in [0, 64).
FaultTrialSummary fault_recovery_trials(std::size_t trials, std::size_t faults, std::uint64_t seed,
                                        FaultModel model = FaultModel::kWordReset, unsigned workers = 1);

}  // namespace snowlab
