#include "snowlab/analysis/bias.hpp"

#include <bit>
#include <cmath>
#include <thread>
#include <vector>

#include "snowlab/errors.hpp"
#include "snowlab/sbox.hpp"

namespace snowlab {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Splits `samples` into fixed chunks; chunk c always sees CounterRng(seed, c),
// so the summed count does not depend on how chunks are spread over workers.
template <class ChunkFn>
std::uint64_t run_chunked(std::uint64_t samples, unsigned workers, ChunkFn chunk_fn) {
  const std::uint64_t chunks = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  workers = std::max(1u, workers);
  std::vector<std::uint64_t> partial(workers, 0);
  auto work = [&](unsigned w) {
    for (std::uint64_t c = w; c < chunks; c += workers) {
      const std::uint64_t count = std::min(kSamplesPerChunk, samples - c * kSamplesPerChunk);
      partial[w] += chunk_fn(c, count);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

bool parity(Word w) { return std::popcount(w) & 1; }

Word bit_at(int i, BitOrder order) { return Word{1} << (order == BitOrder::kLsbZero ? i : 31 - i); }

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ull))) {}

std::uint64_t CounterRng::next() { return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

bool BiasReport::significant() const { return std::abs(sigmas()) > kSignificanceSigma; }

BiasReport make_bias_report(std::string relation_id, std::uint64_t zeros, std::uint64_t samples, std::uint64_t seed) {
  BiasReport r;
  r.relation_id = std::move(relation_id);
  r.samples = samples;
  r.zeros = zeros;
  r.seed = seed;
  r.estimate = samples == 0 ? 0.0 : (2.0 * static_cast<double>(zeros) - static_cast<double>(samples)) / static_cast<double>(samples);
  r.std_error = samples == 0 ? 0.0 : std::sqrt((1.0 - r.estimate * r.estimate) / static_cast<double>(samples));
  return r;
}

CarryBiasResult carry_bias(int bit, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (bit < 0 || bit >= 32) throw InvalidArgument("carry bit index must be in 0..31");
  if (samples == 0) throw InvalidArgument("samples must be positive");

  // Both indexings are counted from the same draws; carry-out-of counts go per chunk.
  std::uint64_t out_zeros_total = 0;
  std::vector<std::uint64_t> out_partial((samples + kSamplesPerChunk - 1) / kSamplesPerChunk, 0);
  const std::uint64_t into_zeros = run_chunked(samples, workers, [&](std::uint64_t chunk, std::uint64_t count) {
    CounterRng rng(seed, chunk);
    std::uint64_t into = 0;
    std::uint64_t out = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      const std::uint64_t x = rng.next_word();
      const std::uint64_t y = rng.next_word();
      const std::uint64_t carries = (x + y) ^ x ^ y;  // bit j = carry into bit j, bit 32 = final carry
      into += ((carries >> bit) & 1) == 0;
      out += ((carries >> (bit + 1)) & 1) == 0;
    }
    out_partial[chunk] = out;
    return into;
  });
  for (auto v : out_partial) out_zeros_total += v;

  CarryBiasResult r;
  r.bit = bit;
  r.formula = 0.5 + std::ldexp(1.0, -(bit + 1));
  r.into = make_bias_report("carry-into-" + std::to_string(bit), into_zeros, samples, seed);
  r.out_of = make_bias_report("carry-out-of-" + std::to_string(bit), out_zeros_total, samples, seed);
  auto within = [&](const BiasReport& b) {
    const double tol = kToleranceSigma * std::max(b.probability_std_error(), 1e-12);
    return std::abs(b.probability() - r.formula) <= tol;
  };
  r.into_matches = within(r.into);
  r.out_of_matches = within(r.out_of);
  return r;
}

FsmRelation snow1_fsm_relation(BitOrder order) {
  FsmRelation r;
  r.id = order == BitOrder::kLsbZero ? "snow1-fsm" : "snow1-fsm-msb";
  r.a_mask = bit_at(15, order) | bit_at(16, order);
  r.b_mask = bit_at(22, order) | bit_at(23, order);
  r.f0_mask = bit_at(15, order);
  r.f1_mask = bit_at(23, order);
  return r;
}

FsmRelation fair_coin_relation() {
  FsmRelation r;
  r.id = "fair-coin";
  r.fair_coin = true;
  return r;
}

FsmRelation fsm_relation_by_id(std::string_view id) {
  if (id == "snow1-fsm") return snow1_fsm_relation(BitOrder::kLsbZero);
  if (id == "snow1-fsm-msb") return snow1_fsm_relation(BitOrder::kMsbZero);
  if (id == "fair-coin") return fair_coin_relation();
  throw InvalidArgument("unknown relation '" + std::string(id) + "' (snow1-fsm, snow1-fsm-msb, fair-coin)");
}

BiasReport fsm_bias_mc(const FsmRelation& rel, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw InvalidArgument("samples must be positive");
  const std::uint64_t zeros = run_chunked(samples, workers, [&](std::uint64_t chunk, std::uint64_t count) {
    CounterRng rng(seed, chunk);
    std::uint64_t z = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      if (rel.fair_coin) {
        z += (rng.next() >> 63) == 0;
        continue;
      }
      const Word a = rng.next_word();
      const Word b = rng.next_word();
      const Word r1 = rng.next_word();
      const Word r2 = rng.next_word();
      const Word f0 = add_mod32(a, r1) ^ r2;
      const Word r1_next = rotl7(add_mod32(f0, r2)) ^ r1;
      const Word r2_next = snow1_byte_layer(r1);
      const Word f1 = add_mod32(b, r1_next) ^ r2_next;
      const bool v = parity((a & rel.a_mask) ^ (b & rel.b_mask) ^ (f0 & rel.f0_mask) ^ (f1 & rel.f1_mask));
      z += !v;
    }
    return z;
  });
  return make_bias_report(rel.id, zeros, samples, seed);
}

double correlation_exhaustive(const std::function<std::uint32_t(std::uint32_t)>& f, int m, MaskPair mask) {
  if (m < 1 || m > 16) throw InvalidArgument("exhaustive correlation needs 1 <= m <= 16");
  const std::uint32_t size = 1u << m;
  long long balance = 0;
  for (std::uint32_t x = 0; x < size; ++x) {
    const bool lhs = std::popcount(mask.t & f(x)) & 1;
    const bool rhs = std::popcount(mask.lambda & x) & 1;
    balance += lhs == rhs ? 1 : -1;
  }
  return static_cast<double>(balance) / static_cast<double>(size);
}

}  // namespace snowlab
