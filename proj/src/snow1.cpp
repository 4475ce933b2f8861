#include "snowlab/snow1.hpp"

#include <algorithm>

namespace snowlab {

Snow1::Snow1(const Snow1State& state, Snow1Options options)
    : state_(state), options_(std::move(options)), identity_permutation_(options_.permutation.is_identity()) {}

Snow1 Snow1::from_state(const Snow1State& state, Snow1Options options) { return Snow1(state, std::move(options)); }

Snow1::Snow1(const Snow1Key& key, Snow1Options options) : Snow1(Snow1State{}, std::move(options)) {
  const auto& k = key.key;
  const Word iv2 = key.iv[0];
  const Word iv1 = key.iv[1];
  constexpr Word kOnes = 0xFFFFFFFFu;
  state_.lfsr = {k[0] ^ iv1, k[1], k[2], k[3] ^ iv2, k[4], k[5], k[6], k[7],
                 k[0] ^ kOnes, k[1] ^ kOnes, k[2] ^ kOnes, k[3] ^ kOnes,
                 k[4] ^ kOnes, k[5] ^ kOnes, k[6] ^ kOnes, k[7] ^ kOnes};
  state_.r1 = 0;
  state_.r2 = 0;

  for (int round = 0; round < kSnow1InitRounds; ++round) {
    const Word fm = fsm_step();
    if (options_.init_mode == Snow1InitMode::kFeedbackFold) {
      lfsr_step(fm);
    } else {
      lfsr_step();
      for (Word& cell : state_.lfsr) cell ^= fm;
    }
  }
  state_.clock = 0;
}

Word Snow1::sbox(Word w) const {
  const Word mapped = snow1_byte_layer(w);
  return identity_permutation_ ? mapped : options_.permutation.apply(mapped);
}

Word Snow1::fsm_step() {
  const Word fm = add_mod32(state_.lfsr[0], state_.r1) ^ state_.r2;
  const Word r1_next = rotl7(add_mod32(fm, state_.r2)) ^ state_.r1;
  state_.r2 = sbox(state_.r1);
  state_.r1 = r1_next;
  return fm;
}

void Snow1::lfsr_step(Word extra) {
  auto& s = state_.lfsr;
  const Word feedback = mul_alpha_snow1(s[0] ^ s[3] ^ s[9]) ^ extra;
  std::shift_left(s.begin(), s.end(), 1);
  s[15] = feedback;
}

Word Snow1::step() {
  const Word oldest = state_.lfsr[0];
  const Word fm = fsm_step();
  lfsr_step();
  ++state_.clock;
  return fm ^ oldest;
}

std::vector<Word> Snow1::keystream(std::size_t count) {
  std::vector<Word> out(count);
  keystream(out);
  return out;
}

void Snow1::keystream(std::span<Word> out) {
  for (Word& w : out) w = step();
}

}  // namespace snowlab
