#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "snowlab/field.hpp"

namespace snowlab {

/// Counter-based generator: output k of stream s under seed is a pure function of (seed, s, k).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  Word next_word() { return static_cast<Word>(next() >> 32); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline constexpr std::uint64_t kSamplesPerChunk = 65536;
inline constexpr double kSignificanceSigma = 5.0;
inline constexpr double kToleranceSigma = 4.0;

/// Measured relation statistics. `estimate` is the signed correlation
/// 2 * Pr[relation = 0] - 1.
struct BiasReport {
  std::string relation_id;
  double estimate = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t zeros = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;

  double probability() const { return (1.0 + estimate) / 2.0; }
  double bias() const { return estimate / 2.0; }
  double probability_std_error() const { return std_error / 2.0; }
  double sigmas() const { return std_error > 0.0 ? estimate / std_error : 0.0; }
  bool significant() const;
};

BiasReport make_bias_report(std::string relation_id, std::uint64_t zeros, std::uint64_t samples, std::uint64_t seed);

/// Carry bit c_i of X + Y for uniform words, under both indexings.
struct CarryBiasResult {
  int bit = 0;
  double formula = 0.0;  // 1/2 + 1/2^(i+1)
  BiasReport into;       // c_i = carry entering bit i
  BiasReport out_of;     // c_i = carry leaving bit i
  bool into_matches = false;
  bool out_of_matches = false;
};

/// Throws InvalidArgument unless 0 <= bit < 32 and samples > 0.
CarryBiasResult carry_bias(int bit, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// Parity of masked bits over two consecutive SNOW 1.0 FSM rounds:
/// a = St_t, b = St_t+1, f0 = Fm_t, f1 = Fm_t+1.
struct FsmRelation {
  std::string id;
  Word a_mask = 0;
  Word b_mask = 0;
  Word f0_mask = 0;
  Word f1_mask = 0;
  bool fair_coin = false;  // ignore the masks and draw a fresh uniform bit
};

enum class BitOrder { kLsbZero, kMsbZero };

FsmRelation snow1_fsm_relation(BitOrder order = BitOrder::kLsbZero);
FsmRelation fair_coin_relation();
/// snow1-fsm, snow1-fsm-msb or fair-coin; throws InvalidArgument otherwise.
FsmRelation fsm_relation_by_id(std::string_view id);

/// Throws InvalidArgument when samples == 0.
BiasReport fsm_bias_mc(const FsmRelation& relation, std::uint64_t samples, std::uint64_t seed,
                       unsigned workers = 1);

struct MaskPair {
  std::uint32_t t = 0;       // output mask T
  std::uint32_t lambda = 0;  // input mask
};

/// (#{x : T.F(x) = lambda.x} - #{x : T.F(x) != lambda.x}) / 2^m over all m-bit x.
/// Throws InvalidArgument unless 1 <= m <= 16.
double correlation_exhaustive(const std::function<std::uint32_t(std::uint32_t)>& f, int m, MaskPair mask);

}  // namespace snowlab
