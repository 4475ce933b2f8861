#include "snowlab/snow2.hpp"

#include <algorithm>

#include "snowlab/errors.hpp"

namespace snowlab {

Snow2::Snow2(const Snow2State& state, Snow2Options options)
    : state_(state), options_(std::move(options)), tables_(&snow2_alpha_tables()) {
  if (!options_.s1) {
    options_.s1 = std::shared_ptr<const SubstitutionLayer>(&snow2_s1(), [](const SubstitutionLayer*) {});
  }
}

Snow2 Snow2::from_state(const Snow2State& state, Snow2Options options) { return Snow2(state, std::move(options)); }

Snow2::Snow2(const Snow2Key& key, Snow2Options options) : Snow2(Snow2State{}, std::move(options)) {
  const auto& k = key.key;
  const auto& iv = key.iv;  // IV3, IV2, IV1, IV0
  constexpr Word kOnes = 0xFFFFFFFFu;
  state_.lfsr = {k[0] ^ kOnes, k[1] ^ kOnes, k[2] ^ kOnes, k[3] ^ kOnes,
                 k[4] ^ kOnes, k[5] ^ kOnes, k[6] ^ kOnes, k[7] ^ kOnes,
                 k[0],         k[1] ^ iv[0], k[2] ^ iv[1], k[3],
                 k[4] ^ iv[2], k[5],         k[6],         k[7] ^ iv[3]};
  for (int round = 0; round < kSnow2InitRounds; ++round) clock(/*init_mode=*/true);
  clock(false);  // first keystream word is discarded
  state_.clock = 0;
}

Word Snow2::s1(Word w) const {
  if (options_.linearized) return w;
  return options_.path == FieldPath::kTable ? (*options_.s1)(w) : options_.s1->apply_naive(w);
}

Word Snow2::times_alpha(Word w) const {
  return options_.path == FieldPath::kTable ? mul_alpha(w, *tables_) : mul_alpha_poly(w);
}

Word Snow2::times_alpha_inv(Word w) const {
  return options_.path == FieldPath::kTable ? mul_alpha_inv(w, *tables_) : mul_alpha_inv_poly(w);
}

// One clock; returns z = Fm ^ St_t from the pre-clock state. In init mode Fm
// is folded into the incoming feedback word instead.
Word Snow2::clock(bool init_mode) {
  auto& s = state_.lfsr;
  const Word fm = add(s[15], state_.r1) ^ state_.r2;
  const Word z = fm ^ s[0];

  const Word r1_next = add(s[5], state_.r2);
  state_.r2 = s1(state_.r1);
  state_.r1 = r1_next;

  const Word feedback = times_alpha_inv(s[11]) ^ s[2] ^ times_alpha(s[0]) ^ (init_mode ? fm : 0u);
  std::shift_left(s.begin(), s.end(), 1);
  s[15] = feedback;
  ++state_.clock;
  return z;
}

Word Snow2::step() {
  if (produced_ >= options_.limit) throw BudgetExhausted(options_.limit);
  const Word z = clock(false);
  ++produced_;
  return z;
}

std::vector<Word> Snow2::keystream(std::size_t count) {
  std::vector<Word> out(count);
  keystream(out);
  return out;
}

void Snow2::keystream(std::span<Word> out) {
  for (Word& w : out) w = step();
}

std::vector<Byte> Snow2::encrypt(std::span<const Byte> data) {
  const std::uint64_t words_needed = (data.size() + 3) / 4;
  if (words_needed > options_.limit - produced_) throw BudgetExhausted(options_.limit);
  std::vector<Byte> out(data.begin(), data.end());
  for (std::size_t i = 0; i < out.size(); i += 4) {
    const Word z = step();
    for (std::size_t j = 0; j < 4 && i + j < out.size(); ++j) out[i + j] ^= byte_at(z, static_cast<int>(j));
  }
  return out;
}

}  // namespace snowlab
