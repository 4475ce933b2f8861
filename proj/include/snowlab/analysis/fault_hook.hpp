#pragma once

#ifndef SNOWLAB_ENABLE_FAULT_HOOKS
#error "fault_hook.hpp is reserved for the analysis library (define SNOWLAB_ENABLE_FAULT_HOOKS)"
#endif

#include "snowlab/snow3g.hpp"

namespace snowlab {

/// Write access to SNOW 3G snapshot internals, for fault simulation only.
class FaultHook {
 public:
  static Word& lfsr(Snow3gSnapshot& s, int cell) { return s.lfsr_.at(static_cast<std::size_t>(cell)); }
  static Word lfsr(const Snow3gSnapshot& s, int cell) { return s.lfsr_.at(static_cast<std::size_t>(cell)); }
  static Word& r1(Snow3gSnapshot& s) { return s.r1_; }
  static Word& r2(Snow3gSnapshot& s) { return s.r2_; }
  static Word& r3(Snow3gSnapshot& s) { return s.r3_; }
  static Word r1(const Snow3gSnapshot& s) { return s.r1_; }
  static Word r2(const Snow3gSnapshot& s) { return s.r2_; }
  static Word r3(const Snow3gSnapshot& s) { return s.r3_; }

  /// Snapshot with the given registers, clock 0, in the requested mode.
  static Snow3gSnapshot make(const std::array<Word, 16>& lfsr, Word r1, Word r2, Word r3, bool linearized) {
    Snow3gSnapshot s;
    s.lfsr_ = lfsr;
    s.r1_ = r1;
    s.r2_ = r2;
    s.r3_ = r3;
    s.linearized_ = linearized;
    return s;
  }
  static std::array<Word, 16> lfsr_words(const Snow3gSnapshot& s) { return s.lfsr_; }
};

}  // namespace snowlab
