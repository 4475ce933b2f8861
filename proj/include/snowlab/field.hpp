#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace snowlab {

using Word = std::uint32_t;
using Byte = std::uint8_t;

// Word byte order is big-endian throughout: byte 0 is the most significant.
constexpr Byte byte_at(Word w, int index) { return static_cast<Byte>(w >> (24 - 8 * index)); }

constexpr Word word_from_bytes(Byte b0, Byte b1, Byte b2, Byte b3) {
  return (Word{b0} << 24) | (Word{b1} << 16) | (Word{b2} << 8) | Word{b3};
}

/// Addition modulo 2^32, the only non-F2-linear word operation of the SNOW family.
constexpr Word add_mod32(Word a, Word b) {
  return static_cast<Word>((std::uint64_t{a} + std::uint64_t{b}) & 0xFFFFFFFFu);
}

constexpr Word sub_mod32(Word a, Word b) { return static_cast<Word>(a - b); }

constexpr Word rotl7(Word w) { return std::rotl(w, 7); }

/// Irreducible degree-8 polynomial x^8 + r(x), stored as the byte r.
class Gf8Modulus {
 public:
  /// Throws InvalidArgument when x^8 + reduction is reducible over F2.
  explicit Gf8Modulus(Byte reduction);

  Byte reduction() const { return reduction_; }
  unsigned polynomial() const { return 0x100u | reduction_; }

  /// f(y) = y^8 + y^7 + y^5 + y^3 + 1, base field of the SNOW 2.0 / 3G word field.
  static Gf8Modulus snow2() { return Gf8Modulus(0xA9); }
  /// h(y) = y^8 + y^5 + y^3 + y + 1, field of the SNOW 1.0 byte map.
  static Gf8Modulus snow1() { return Gf8Modulus(0x2B); }
  /// x^8 + x^4 + x^3 + x + 1, the Rijndael field.
  static Gf8Modulus aes() { return Gf8Modulus(0x1B); }
  /// x^8 + x^6 + x^5 + x^3 + 1, field of the SNOW 3G S2 layer.
  static Gf8Modulus snow3g_s2() { return Gf8Modulus(0x69); }

  friend bool operator==(const Gf8Modulus&, const Gf8Modulus&) = default;

 private:
  Byte reduction_;
};

bool is_irreducible_deg8(unsigned polynomial);

/// Multiplication by the generator y: shift left one place, reduce on overflow.
constexpr Byte gf8_mul_by_y(Byte a, Byte reduction) {
  return static_cast<Byte>((a << 1) ^ ((a & 0x80) ? reduction : 0));
}

Byte gf8_mul(Byte a, Byte b, const Gf8Modulus& m);
Byte gf8_pow(Byte a, unsigned long long e, const Gf8Modulus& m);
/// Multiplicative inverse, with 0 mapped to 0.
Byte gf8_inv(Byte a, const Gf8Modulus& m);

enum class FieldVariant {
  kSnow2,  // GF((2^8)^4) tower used by SNOW 2.0 and SNOW 3G
  kSnow1,  // F2[y]/f(y) with the degree-32 SNOW 1.0 polynomial
};

/// Byte-indexed tables for multiplication by alpha and alpha^-1.
///
/// For kSnow2, mul_a[b] is b * alpha^4 expressed in the basis {alpha^3,..,1}
/// (big-endian bytes), and mul_ainv[b] is b * alpha^-1. For kSnow1 only the
/// first two entries are meaningful: index 1 holds the reduction constant.
struct AlphaTables {
  FieldVariant variant;
  std::array<Word, 256> mul_a;
  std::array<Word, 256> mul_ainv;
};

AlphaTables build_alpha_tables(FieldVariant variant);

/// Process-wide SNOW 2.0 tables, built on first use.
const AlphaTables& snow2_alpha_tables();

/// Exponents e3..e0 of g(y) = y^4 + d^e3 y^3 + d^e2 y^2 + d^e1 y + d^e0 over GF(2^8)/0xA9.
inline constexpr std::array<unsigned, 4> kSnow2MinimalPolyExponents{23, 245, 48, 239};

inline Word mul_alpha(Word w, const AlphaTables& t) { return (w << 8) ^ t.mul_a[w >> 24]; }
inline Word mul_alpha_inv(Word w, const AlphaTables& t) { return (w >> 8) ^ t.mul_ainv[w & 0xFF]; }

/// Coefficient-by-coefficient multiplication in GF(2^8)[y]/g(y); no tables.
Word mul_alpha_poly(Word w);
Word mul_alpha_inv_poly(Word w);

/// Exponents of the lower terms of f(y) = y^32 + y^29 + y^20 + y^15 + y^10 + y + 1.
inline constexpr std::array<unsigned, 6> kSnow1FieldLowTerms{29, 20, 15, 10, 1, 0};

constexpr Word snow1_reduction_constant() {
  Word c = 0;
  for (unsigned e : kSnow1FieldLowTerms) c |= Word{1} << e;
  return c;
}

constexpr Word mul_alpha_snow1(Word w) {
  return (w << 1) ^ ((w & 0x80000000u) ? snow1_reduction_constant() : 0u);
}

constexpr Word mul_alpha_inv_snow1(Word w) {
  // The constant has bit 0 set, so bit 0 of w*alpha records the discarded top bit.
  return (w & 1u) ? ((w ^ snow1_reduction_constant()) >> 1) | 0x80000000u : w >> 1;
}

}  // namespace snowlab
