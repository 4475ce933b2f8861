#include "snowlab/snow3g.hpp"

#include <algorithm>

#include "snowlab/sbox.hpp"

namespace snowlab {

Snow3g::Snow3g(const Snow3gKey& key, Snow3gOptions options) {
  const auto& k = key.key;
  const auto& iv = key.iv;
  constexpr Word kOnes = 0xFFFFFFFFu;
  auto& s = state_.lfsr_;
  s[15] = k[3] ^ iv[0];
  s[14] = k[2];
  s[13] = k[1];
  s[12] = k[0] ^ iv[1];
  s[11] = k[3] ^ kOnes;
  s[10] = k[2] ^ kOnes ^ iv[2];
  s[9] = k[1] ^ kOnes ^ iv[3];
  s[8] = k[0] ^ kOnes;
  s[7] = k[3];
  s[6] = k[2];
  s[5] = k[1];
  s[4] = k[0];
  s[3] = k[3] ^ kOnes;
  s[2] = k[2] ^ kOnes;
  s[1] = k[1] ^ kOnes;
  s[0] = k[0] ^ kOnes;
  state_.linearized_ = options.linearized;

  for (int round = 0; round < kSnow3gInitRounds; ++round) clock_lfsr(clock_fsm());
  clock_fsm();  // output of the first keystream-mode FSM clock is discarded
  clock_lfsr(0);
  state_.clock_ = 0;
}

Snow3g Snow3g::restore(const Snow3gSnapshot& snapshot) { return Snow3g(snapshot); }

Word Snow3g::clock_fsm() {
  auto& st = state_;
  const Word f = add(st.lfsr_[15], st.r1_) ^ st.r2_;
  const Word r = add(st.r2_, st.r3_ ^ st.lfsr_[5]);
  if (st.linearized_) {
    st.r3_ = st.r2_;
    st.r2_ = st.r1_;
  } else {
    st.r3_ = snow3g_s2()(st.r2_);
    st.r2_ = snow3g_s1()(st.r1_);
  }
  st.r1_ = r;
  return f;
}

void Snow3g::clock_lfsr(Word extra) {
  static const AlphaTables& tables = snow2_alpha_tables();
  auto& s = state_.lfsr_;
  const Word v = mul_alpha(s[0], tables) ^ s[2] ^ mul_alpha_inv(s[11], tables) ^ extra;
  std::shift_left(s.begin(), s.end(), 1);
  s[15] = v;
}

Word Snow3g::step() {
  const Word f = clock_fsm();
  const Word z = f ^ state_.lfsr_[0];
  clock_lfsr(0);
  ++state_.clock_;
  return z;
}

std::vector<Word> Snow3g::keystream(std::size_t count) {
  std::vector<Word> out(count);
  keystream(out);
  return out;
}

void Snow3g::keystream(std::span<Word> out) {
  for (Word& w : out) w = step();
}

}  // namespace snowlab
