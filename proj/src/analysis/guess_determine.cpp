#include "snowlab/analysis/guess_determine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

#include "snowlab/analysis/bias.hpp"

namespace snowlab {
namespace {

enum class RelKind { kXorZ, kAdd, kSbox, kLin };

// kXorZ: v[0] ^ v[1] ^ v[2] = z.   kAdd: v[0] = v[1] + v[2].
// kSbox: v[1] = S(v[0]).           kLin: v[0] = sum coef[i] * v[i], i >= 1.
struct Relation {
  RelKind kind;
  std::vector<int> v;
  std::vector<MiniWord> coef;
  MiniWord z = 0;
};

class Unrolled {
 public:
  Unrolled(const MiniParams& p, std::size_t window) : p_(p), field_(p.field()), T_(static_cast<int>(window)) {
    const int n = p.n;
    n_lfsr_ = n + T_;
    n_vars_ = n_lfsr_ + T_ + 2 * (T_ + 1);
    mask_ = field_.mask();
    sbox_ = p.resolved_sbox();
    sbox_inv_.assign(sbox_.size(), 0);
    for (std::size_t x = 0; x < sbox_.size(); ++x) sbox_inv_[sbox_[x]] = static_cast<MiniWord>(x);

    std::map<int, MiniWord> combined;
    for (const MiniTap& t : p.taps) combined[t.index] ^= field_.alpha_pow(t.power);
    for (auto& [index, c] : combined) {
      if (c != 0) taps_.emplace_back(index, c);
    }

    // F2 rows of every LFSR word over the m*n initial bits.
    rows_.assign(n_lfsr_, std::vector<std::uint32_t>(p.m));
    for (int k = 0; k < n; ++k) {
      for (int b = 0; b < p.m; ++b) rows_[k][b] = 1u << (k * p.m + b);
    }
    for (int k = n; k < n_lfsr_; ++k) {
      for (const auto& [index, c] : taps_) {
        for (int j = 0; j < p.m; ++j) {
          const MiniWord col = field_.mul(c, static_cast<MiniWord>(1u << j));
          for (int i = 0; i < p.m; ++i) {
            if ((col >> i) & 1) rows_[k][i] ^= rows_[k - n + index][j];
          }
        }
      }
    }

    for (int k = 0; k < T_; ++k) {
      Relation lin{RelKind::kLin, {s(k + n)}, {1}};
      for (const auto& [index, c] : taps_) {
        lin.v.push_back(s(k + index));
        lin.coef.push_back(c);
      }
      relations_.push_back(std::move(lin));
    }
    for (int t = 0; t < T_; ++t) {
      relations_.push_back({RelKind::kXorZ, {u(t), r2(t), s(t)}, {}});
      relations_.push_back({RelKind::kAdd, {u(t), s(t + p.top_index()), r1(t)}, {}});
      relations_.push_back({RelKind::kAdd, {r1(t + 1), s(t + p.mid_index()), r2(t)}, {}});
      relations_.push_back({RelKind::kSbox, {r1(t), r2(t + 1)}, {}});
    }
  }

  int s(int k) const { return k; }
  int u(int t) const { return n_lfsr_ + t; }
  int r1(int t) const { return n_lfsr_ + T_ + t; }
  int r2(int t) const { return n_lfsr_ + T_ + (T_ + 1) + t; }
  int n_vars() const { return n_vars_; }

  int index_of(const GdVariable& v) const {
    switch (v.kind) {
      case GdVariable::Kind::kLfsr:
        if (v.time < 0 || v.time >= n_lfsr_) break;
        return s(v.time);
      case GdVariable::Kind::kSum:
        if (v.time < 0 || v.time >= T_) break;
        return u(v.time);
      case GdVariable::Kind::kR1:
        if (v.time < 0 || v.time > T_) break;
        return r1(v.time);
      case GdVariable::Kind::kR2:
        if (v.time < 0 || v.time > T_) break;
        return r2(v.time);
    }
    throw InvalidArgument("basis variable " + v.name() + " lies outside the keystream window");
  }

  std::vector<int> key_state() const {
    std::vector<int> out;
    for (int k = 0; k < p_.n; ++k) out.push_back(s(k));
    out.push_back(r1(0));
    out.push_back(r2(0));
    return out;
  }

  void set_keystream(std::span<const MiniWord> z) {
    for (auto& r : relations_) {
      if (r.kind == RelKind::kXorZ) r.z = z[static_cast<std::size_t>(r.v[0] - n_lfsr_)];
    }
  }

  // Structural closure: which words become known from `known`.
  void close(std::vector<char>& known) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Relation& r : relations_) {
        if (r.kind == RelKind::kSbox) {
          if (known[r.v[0]] != known[r.v[1]]) {
            known[r.v[0]] = known[r.v[1]] = 1;
            changed = true;
          }
          continue;
        }
        int unknown = -1;
        int count = 0;
        for (int v : r.v) {
          if (!known[v]) {
            unknown = v;
            ++count;
          }
        }
        if (count == 1) {
          known[unknown] = 1;
          changed = true;
        }
      }
      if (span_rank(known) == p_.m * p_.n) {
        for (int k = 0; k < n_lfsr_; ++k) {
          if (!known[k]) {
            known[k] = 1;
            changed = true;
          }
        }
      }
    }
  }

  // Value propagation; false on contradiction.
  bool propagate(std::vector<int>& val) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Relation& r : relations_) {
        switch (r.kind) {
          case RelKind::kXorZ:
          case RelKind::kAdd: {
            const int a = val[r.v[0]], b = val[r.v[1]], c = val[r.v[2]];
            const int unknown = (a < 0) + (b < 0) + (c < 0);
            if (unknown > 1) break;
            if (r.kind == RelKind::kXorZ) {
              if (unknown == 0) {
                if ((a ^ b ^ c) != r.z) return false;
              } else {
                const int solved = (std::max(a, 0) ^ std::max(b, 0) ^ std::max(c, 0)) ^ r.z;
                val[a < 0 ? r.v[0] : b < 0 ? r.v[1] : r.v[2]] = solved;
                changed = true;
              }
            } else {
              if (unknown == 0) {
                if (a != add(b, c)) return false;
              } else if (a < 0) {
                val[r.v[0]] = add(b, c);
                changed = true;
              } else if (b < 0) {
                val[r.v[1]] = sub(a, c);
                changed = true;
              } else {
                val[r.v[2]] = sub(a, b);
                changed = true;
              }
            }
            break;
          }
          case RelKind::kSbox: {
            const int a = val[r.v[0]], b = val[r.v[1]];
            if (a >= 0 && b >= 0) {
              if (sbox_[a] != b) return false;
            } else if (a >= 0) {
              val[r.v[1]] = sbox_[a];
              changed = true;
            } else if (b >= 0) {
              val[r.v[0]] = sbox_inv_[b];
              changed = true;
            }
            break;
          }
          case RelKind::kLin: {
            int unknown_pos = -1;
            int count = 0;
            MiniWord acc = 0;
            for (std::size_t i = 0; i < r.v.size(); ++i) {
              const int x = val[r.v[i]];
              if (x < 0) {
                unknown_pos = static_cast<int>(i);
                ++count;
              } else {
                acc ^= i == 0 ? static_cast<MiniWord>(x) : field_.mul(r.coef[i], static_cast<MiniWord>(x));
              }
            }
            if (count == 0) {
              if (acc != 0) return false;
            } else if (count == 1) {
              const MiniWord c = unknown_pos == 0 ? 1 : r.coef[unknown_pos];
              val[r.v[unknown_pos]] = field_.mul(field_.inv(c), acc);
              changed = true;
            }
            break;
          }
        }
      }
      int spread = 0;
      if (!solve_span(val, spread)) return false;
      if (spread > 0) changed = true;
    }
    return true;
  }

  // Tries every value of each unknown word; a word with a single surviving value is
  // fixed to it. False when some word has no surviving value.
  bool probe(std::vector<int>& val, std::uint64_t& probes) const {
    const int values = 1 << p_.m;
    bool progress = true;
    while (progress) {
      progress = false;
      for (int v = 0; v < n_vars_; ++v) {
        if (val[v] >= 0) continue;
        int survivors = 0;
        std::vector<int> kept;
        for (int x = 0; x < values && survivors < 2; ++x) {
          std::vector<int> trial = val;
          trial[v] = x;
          ++probes;
          if (propagate(trial)) {
            ++survivors;
            kept = std::move(trial);
          }
        }
        if (survivors == 0) return false;
        if (survivors == 1) {
          val = std::move(kept);
          progress = true;
        }
      }
    }
    return true;
  }

 private:
  MiniWord add(int a, int b) const {
    if (p_.arith == MiniArith::kXor) return static_cast<MiniWord>(a ^ b);
    return static_cast<MiniWord>((a + b) & mask_);
  }
  MiniWord sub(int a, int b) const {
    if (p_.arith == MiniArith::kXor) return static_cast<MiniWord>(a ^ b);
    return static_cast<MiniWord>((a - b) & mask_);
  }

  int span_rank(const std::vector<char>& known) const {
    std::vector<std::uint32_t> basis;
    for (int k = 0; k < n_lfsr_; ++k) {
      if (!known[k]) continue;
      for (std::uint32_t row : rows_[k]) {
        for (std::uint32_t b : basis) row = std::min(row, row ^ b);
        if (row != 0) {
          basis.push_back(row);
          std::sort(basis.rbegin(), basis.rend());
        }
      }
    }
    return static_cast<int>(basis.size());
  }

  // When the known LFSR words pin down the initial bits, fill in every LFSR word.
  bool solve_span(std::vector<int>& val, int& filled) const {
    const int nbits = p_.m * p_.n;
    std::vector<std::pair<std::uint32_t, int>> basis;  // (row, rhs), reduced
    bool all_known = true;
    for (int k = 0; k < n_lfsr_; ++k) {
      if (val[k] < 0) {
        all_known = false;
        continue;
      }
      for (int b = 0; b < p_.m; ++b) {
        std::uint32_t row = rows_[k][b];
        int rhs = (val[k] >> b) & 1;
        for (const auto& [br, bv] : basis) {
          if ((row ^ br) < row) {
            row ^= br;
            rhs ^= bv;
          }
        }
        if (row == 0) {
          if (rhs != 0) return false;
          continue;
        }
        basis.emplace_back(row, rhs);
        std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      }
    }
    if (all_known || static_cast<int>(basis.size()) < nbits) return true;
    // Back-substitute to get x, then evaluate every LFSR word.
    std::uint32_t x = 0;
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
      const int lead = std::bit_width(it->first) - 1;
      const int rest = std::popcount(it->first & x & ~(1u << lead)) & 1;
      if ((it->second ^ rest) & 1) x |= 1u << lead;
    }
    for (int k = 0; k < n_lfsr_; ++k) {
      int w = 0;
      for (int b = 0; b < p_.m; ++b) w |= (std::popcount(rows_[k][b] & x) & 1) << b;
      if (val[k] < 0) {
        val[k] = w;
        ++filled;
      } else if (val[k] != w) {
        return false;
      }
    }
    return true;
  }

  MiniParams p_;
  MiniField field_;
  int T_;
  int n_lfsr_ = 0;
  int n_vars_ = 0;
  MiniWord mask_ = 0;
  std::vector<MiniWord> sbox_;
  std::vector<MiniWord> sbox_inv_;
  std::vector<std::pair<int, MiniWord>> taps_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<Relation> relations_;
};

std::vector<GdVariable> candidates(const MiniParams& p, std::size_t window) {
  using K = GdVariable::Kind;
  std::vector<GdVariable> out;
  for (int k = 0; k < p.n; ++k) out.push_back({K::kLfsr, k});
  out.push_back({K::kR1, 0});
  out.push_back({K::kR2, 0});
  const int horizon = std::min<int>(2, static_cast<int>(window) - 1);
  for (int t = 0; t <= horizon; ++t) {
    out.push_back({K::kSum, t});
    if (t > 0) {
      out.push_back({K::kR1, t});
      out.push_back({K::kR2, t});
    }
  }
  for (int k = p.n; k < p.n + horizon + 1; ++k) out.push_back({K::kLfsr, k});
  return out;
}

bool determines(const Unrolled& u, const std::vector<int>& chosen) {
  std::vector<char> known(static_cast<std::size_t>(u.n_vars()), 0);
  for (int v : chosen) known[v] = 1;
  u.close(known);
  for (int v : u.key_state()) {
    if (!known[v]) return false;
  }
  return true;
}

}  // namespace

std::string GdVariable::name() const {
  switch (kind) {
    case Kind::kLfsr: return "s" + std::to_string(time);
    case Kind::kSum: return "u" + std::to_string(time);
    case Kind::kR1: return "R1_" + std::to_string(time);
    case Kind::kR2: return "R2_" + std::to_string(time);
  }
  return "?";
}

std::vector<GdVariable> gd_find_basis(const MiniParams& params, std::size_t window) {
  params.validate();
  if (window == 0) throw InvalidArgument("keystream window must be nonempty");
  const Unrolled u(params, window);
  const auto cand = candidates(params, window);
  std::vector<int> idx;
  for (const auto& c : cand) idx.push_back(u.index_of(c));

  for (std::size_t size = 1; size <= cand.size(); ++size) {
    // Lexicographic combinations of `size` candidates.
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<int> chosen;
      for (auto i : pick) chosen.push_back(idx[i]);
      if (determines(u, chosen)) {
        std::vector<GdVariable> basis;
        for (auto i : pick) basis.push_back(cand[i]);
        return basis;
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == cand.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw Error("no determining basis inside the candidate set");
}

namespace {

enum class Outcome { kContradiction, kOpen, kDetermined };

Outcome determine(const Unrolled& u, std::vector<int>& val, bool probe, std::uint64_t& probes) {
  if (!u.propagate(val) || (probe && !u.probe(val, probes))) return Outcome::kContradiction;
  for (int v : u.key_state()) {
    if (val[v] < 0) return Outcome::kOpen;
  }
  return Outcome::kDetermined;
}

std::vector<int> assignment(const Unrolled& u, const std::vector<int>& chosen, std::uint64_t g, int m) {
  std::vector<int> val(static_cast<std::size_t>(u.n_vars()), -1);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    val[chosen[i]] = static_cast<int>((g >> (m * i)) & ((1u << m) - 1));
  }
  return val;
}

// True when no assignment of `chosen` leaves a key-state word open under probing.
bool probe_determines(const Unrolled& u, const std::vector<int>& chosen, const std::vector<int>& truth, int m) {
  std::uint64_t probes = 0;
  // The true assignment never contradicts, so it is the quickest witness of failure.
  std::uint64_t true_g = 0;
  for (std::size_t i = 0; i < chosen.size(); ++i) true_g |= static_cast<std::uint64_t>(truth[chosen[i]]) << (m * i);
  std::vector<int> val = assignment(u, chosen, true_g, m);
  if (determine(u, val, true, probes) != Outcome::kDetermined) return false;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << (m * chosen.size())); ++g) {
    val = assignment(u, chosen, g, m);
    if (determine(u, val, true, probes) == Outcome::kOpen) return false;
  }
  return true;
}

}  // namespace

std::vector<GdVariable> gd_find_basis_probing(const MiniParams& params, std::size_t window, std::size_t references) {
  params.validate();
  if (window == 0) throw InvalidArgument("keystream window must be nonempty");
  if (params.state_bits() > 24) throw InvalidArgument("guess-and-determine requires m * (n + 2) <= 24");
  constexpr std::uint64_t kReferenceSeed = 0x6d696e69;
  const std::uint32_t space = std::uint32_t{1} << params.state_bits();

  struct Reference {
    Unrolled u;
    std::vector<int> truth;
  };
  std::vector<Reference> refs;
  for (std::size_t r = 0; r < std::max<std::size_t>(references, 1); ++r) {
    CounterRng rng(kReferenceSeed, r);
    const MiniKeyState ks = decode_key_state(params, static_cast<std::uint32_t>(rng.next() % space));
    MiniSnow cipher(params, ks);
    Unrolled u(params, window);
    u.set_keystream(cipher.keystream(window));
    std::vector<int> truth(static_cast<std::size_t>(u.n_vars()), -1);
    const auto key = u.key_state();
    for (std::size_t i = 0; i < key.size(); ++i) truth[key[i]] = ks.words[i];
    u.propagate(truth);
    refs.push_back({std::move(u), std::move(truth)});
  }

  const auto cand = candidates(params, window);
  for (std::size_t size = 1; size <= cand.size() && static_cast<int>(size) * params.m <= 24; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      bool ok = true;
      for (const Reference& ref : refs) {
        std::vector<int> chosen;
        for (auto i : pick) chosen.push_back(ref.u.index_of(cand[i]));
        if (!probe_determines(ref.u, chosen, ref.truth, params.m)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<GdVariable> basis;
        for (auto i : pick) basis.push_back(cand[i]);
        return basis;
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == cand.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw Error("no determining basis inside the candidate set");
}

GdResult gd_attack_mini(const MiniParams& params, std::span<const MiniWord> keystream,
                        const std::vector<GdVariable>& basis, bool probe) {
  params.validate();
  if (params.state_bits() > 24) throw InvalidArgument("guess-and-determine requires m * (n + 2) <= 24");
  if (keystream.empty()) throw InvalidArgument("keystream must be nonempty");
  Unrolled u(params, keystream.size());
  u.set_keystream(keystream);

  GdResult out;
  if (!basis.empty()) {
    out.basis = basis;
  } else {
    out.basis = probe ? gd_find_basis_probing(params, keystream.size()) : gd_find_basis(params, keystream.size());
  }
  std::vector<int> chosen;
  for (const auto& v : out.basis) chosen.push_back(u.index_of(v));
  out.basis_bits = out.basis.size() * static_cast<std::size_t>(params.m);
  if (out.basis_bits > 24) throw InvalidArgument("basis wider than 24 bits");

  const auto key = u.key_state();
  const std::uint32_t word_mask = (1u << params.m) - 1;
  const std::vector<MiniWord> expected(keystream.begin(), keystream.end());
  auto accept = [&](const std::vector<int>& val) {
    MiniKeyState ks;
    for (int v : key) ks.words.push_back(static_cast<MiniWord>(val[v]));
    MiniSnow check(params, ks);
    if (check.keystream(expected.size()) == expected) out.consistent.push_back(ks);
  };

  for (std::uint64_t g = 0; g < (std::uint64_t{1} << out.basis_bits); ++g) {
    std::vector<int> val = assignment(u, chosen, g, params.m);
    const Outcome o = determine(u, val, probe, out.probes);
    if (o == Outcome::kContradiction) {
      ++out.guesses;
      ++out.contradictions;
      continue;
    }
    // Key-state words still open after determination are guessed outright.
    std::vector<int> open;
    for (int v : key) {
      if (val[v] < 0) open.push_back(v);
    }
    const std::uint64_t extra = std::uint64_t{1} << (params.m * open.size());
    out.guesses += extra;
    if (!open.empty()) ++out.undetermined;
    for (std::uint64_t e = 0; e < extra; ++e) {
      std::vector<int> leaf = val;
      for (std::size_t i = 0; i < open.size(); ++i) {
        leaf[open[i]] = static_cast<int>((e >> (params.m * i)) & word_mask);
      }
      if (!open.empty() && !u.propagate(leaf)) {
        ++out.contradictions;
        continue;
      }
      accept(leaf);
    }
  }
  if (out.consistent.empty()) throw NoConsistentState();
  std::sort(out.consistent.begin(), out.consistent.end());
  out.consistent.erase(std::unique(out.consistent.begin(), out.consistent.end()), out.consistent.end());
  out.recovered = out.consistent.front();
  return out;
}

}  // namespace snowlab
