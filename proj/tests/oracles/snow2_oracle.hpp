#pragma once

// Reference SNOW 2.0 from its field definitions: GF(2^32) elements are four
// coefficients over GF(2^8)/(y^8 + y^7 + y^5 + y^3 + 1), reduced by
// g(y) = y^4 + d^23 y^3 + d^245 y^2 + d^48 y + d^239 with d the class of y.

#include <array>
#include <cstdint>
#include <vector>

namespace oracle::snow2 {

using u32 = std::uint32_t;
using u8 = std::uint8_t;

inline u8 mul_mod(u8 a, u8 b, unsigned poly) {
  unsigned acc = 0;
  for (int i = 0; i < 8; ++i) {
    if ((b >> i) & 1) acc ^= unsigned{a} << i;
  }
  for (int d = 15; d >= 8; --d) {
    if ((acc >> d) & 1) acc ^= poly << (d - 8);
  }
  return static_cast<u8>(acc);
}

inline u8 dmul(u8 a, u8 b) { return mul_mod(a, b, 0x1A9); }

inline u8 dpow(int e) {
  u8 r = 1;
  for (int i = 0; i < e; ++i) r = dmul(r, 2);
  return r;
}

// Coefficients c[3] (of alpha^3) .. c[0] are the bytes of a word, most significant first.
struct Elem {
  std::array<u8, 4> c{};  // c[i] multiplies alpha^i
};

inline Elem from_word(u32 w) { return {{u8(w), u8(w >> 8), u8(w >> 16), u8(w >> 24)}}; }
inline u32 to_word(const Elem& e) { return u32{e.c[0]} | u32{e.c[1]} << 8 | u32{e.c[2]} << 16 | u32{e.c[3]} << 24; }

// g(alpha) = 0 gives alpha^4 = g3 alpha^3 + g2 alpha^2 + g1 alpha + g0.
inline std::array<u8, 4> g() { return {dpow(239), dpow(48), dpow(245), dpow(23)}; }

inline u32 mul_alpha(u32 w) {
  const Elem x = from_word(w);
  const auto gc = g();
  Elem y;
  for (int i = 3; i >= 1; --i) y.c[i] = x.c[i - 1];
  y.c[0] = 0;
  for (int i = 0; i < 4; ++i) y.c[i] ^= dmul(x.c[3], gc[i]);
  return to_word(y);
}

// Solve alpha * y = x for y coefficient by coefficient.
inline u32 div_alpha(u32 w) {
  const Elem x = from_word(w);
  const auto gc = g();
  u8 g0_inv = 1;
  while (dmul(g0_inv, gc[0]) != 1) ++g0_inv;
  Elem y;
  y.c[3] = dmul(x.c[0], g0_inv);
  for (int i = 0; i < 3; ++i) y.c[i] = x.c[i + 1] ^ dmul(y.c[3], gc[i + 1]);
  return to_word(y);
}

inline u8 aes_sbox(u8 x) {
  u8 inv = 0;
  if (x != 0) {
    for (unsigned c = 1; c < 256; ++c) {
      if (mul_mod(x, u8(c), 0x11B) == 1) {
        inv = u8(c);
        break;
      }
    }
  }
  u8 out = 0x63;
  for (int i = 0; i < 8; ++i) {
    const int bit = ((inv >> i) ^ (inv >> ((i + 4) % 8)) ^ (inv >> ((i + 5) % 8)) ^ (inv >> ((i + 6) % 8)) ^
                     (inv >> ((i + 7) % 8))) & 1;
    out ^= u8(bit << i);
  }
  return out;
}

// Column b_0..b_3 with b_0 the least significant byte; rows of the circulant matrix.
inline u32 s1(u32 w) {
  static const u8 m[4][4] = {{2, 3, 1, 1}, {1, 2, 3, 1}, {1, 1, 2, 3}, {3, 1, 1, 2}};
  u8 s[4];
  for (int i = 0; i < 4; ++i) s[i] = aes_sbox(u8(w >> (8 * i)));
  u32 out = 0;
  for (int r = 0; r < 4; ++r) {
    u8 acc = 0;
    for (int c = 0; c < 4; ++c) acc ^= mul_mod(m[r][c], s[c], 0x11B);
    out |= u32{acc} << (8 * r);
  }
  return out;
}

struct Cipher {
  std::vector<u32> seq;  // seq[t] = St_t; the register is seq[t .. t+15]
  std::size_t t = 0;
  u32 r1 = 0, r2 = 0;

  // Returns Fm_t and advances one clock; `init` folds Fm_t into the feedback.
  u32 clock(bool init) {
    const u32 f = (seq[t + 15] + r1) ^ r2;
    const u32 next_r1 = seq[t + 5] + r2;
    r2 = s1(r1);
    r1 = next_r1;
    seq.push_back(div_alpha(seq[t + 11]) ^ seq[t + 2] ^ mul_alpha(seq[t]) ^ (init ? f : 0));
    ++t;
    return f;
  }

  // k[0..7] = k0..k7; IV given as IV3, IV2, IV1, IV0.
  Cipher(const std::array<u32, 8>& k, u32 iv3, u32 iv2, u32 iv1, u32 iv0) {
    const u32 ones = ~u32{0};
    seq = {k[0] ^ ones, k[1] ^ ones, k[2] ^ ones, k[3] ^ ones, k[4] ^ ones, k[5] ^ ones, k[6] ^ ones, k[7] ^ ones,
           k[0],        k[1] ^ iv3,  k[2] ^ iv2,  k[3],        k[4] ^ iv1,  k[5],        k[6],        k[7] ^ iv0};
    for (int i = 0; i < 32; ++i) clock(true);
    next();
  }

  u32 next() {
    const u32 s0 = seq[t];
    return clock(false) ^ s0;
  }
};

inline std::vector<u32> keystream(const std::array<u32, 8>& key, const std::array<u32, 4>& iv_3210, int words) {
  Cipher c(key, iv_3210[0], iv_3210[1], iv_3210[2], iv_3210[3]);
  std::vector<u32> out;
  for (int i = 0; i < words; ++i) out.push_back(c.next());
  return out;
}

}  // namespace oracle::snow2
