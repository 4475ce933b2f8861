#include "snowlab/field.hpp"

#include "snowlab/errors.hpp"

namespace snowlab {
namespace {

int degree(unsigned p) { return p == 0 ? -1 : std::bit_width(p) - 1; }

unsigned poly_mod(unsigned a, unsigned b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

// g(y) coefficients c3..c0 as bytes, i.e. alpha^4 = c3 alpha^3 + c2 alpha^2 + c1 alpha + c0.
std::array<Byte, 4> snow2_alpha4_coefficients() {
  const Gf8Modulus m = Gf8Modulus::snow2();
  std::array<Byte, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) c[i] = gf8_pow(0x02, kSnow2MinimalPolyExponents[i], m);
  return c;
}

// alpha^-1 = c0^-1 (alpha^3 + c3 alpha^2 + c2 alpha + c1), from g(alpha) = 0.
std::array<Byte, 4> snow2_alpha_inv_coefficients() {
  const Gf8Modulus m = Gf8Modulus::snow2();
  const auto c = snow2_alpha4_coefficients();
  const Byte c0_inv = gf8_inv(c[3], m);
  return {c0_inv, gf8_mul(c[0], c0_inv, m), gf8_mul(c[1], c0_inv, m), gf8_mul(c[2], c0_inv, m)};
}

}  // namespace

bool is_irreducible_deg8(unsigned polynomial) {
  if (degree(polynomial) != 8) return false;
  for (unsigned d = 2; d < 32; ++d) {  // every polynomial of degree 1..4
    if (poly_mod(polynomial, d) == 0) return false;
  }
  return true;
}

Gf8Modulus::Gf8Modulus(Byte reduction) : reduction_(reduction) {
  if (!is_irreducible_deg8(polynomial())) {
    throw InvalidArgument("x^8 + reduction byte is reducible over F2");
  }
}

Byte gf8_mul(Byte a, Byte b, const Gf8Modulus& m) {
  Byte product = 0;
  while (b != 0) {
    if (b & 1) product ^= a;
    a = gf8_mul_by_y(a, m.reduction());
    b >>= 1;
  }
  return product;
}

Byte gf8_pow(Byte a, unsigned long long e, const Gf8Modulus& m) {
  Byte result = 1;
  Byte base = a;
  while (e != 0) {
    if (e & 1) result = gf8_mul(result, base, m);
    base = gf8_mul(base, base, m);
    e >>= 1;
  }
  return result;
}

Byte gf8_inv(Byte a, const Gf8Modulus& m) {
  if (a == 0) return 0;
  return gf8_pow(a, 254, m);
}

AlphaTables build_alpha_tables(FieldVariant variant) {
  AlphaTables t{variant, {}, {}};
  if (variant == FieldVariant::kSnow1) {
    t.mul_a[1] = snow1_reduction_constant();
    t.mul_ainv[1] = snow1_reduction_constant();
    return t;
  }
  const Gf8Modulus m = Gf8Modulus::snow2();
  const auto fwd = snow2_alpha4_coefficients();
  const auto inv = snow2_alpha_inv_coefficients();
  for (unsigned b = 0; b < 256; ++b) {
    const Byte x = static_cast<Byte>(b);
    t.mul_a[b] = word_from_bytes(gf8_mul(x, fwd[0], m), gf8_mul(x, fwd[1], m),
                                 gf8_mul(x, fwd[2], m), gf8_mul(x, fwd[3], m));
    t.mul_ainv[b] = word_from_bytes(gf8_mul(x, inv[0], m), gf8_mul(x, inv[1], m),
                                    gf8_mul(x, inv[2], m), gf8_mul(x, inv[3], m));
  }
  return t;
}

const AlphaTables& snow2_alpha_tables() {
  static const AlphaTables tables = build_alpha_tables(FieldVariant::kSnow2);
  return tables;
}

Word mul_alpha_poly(Word w) {
  static const Gf8Modulus m = Gf8Modulus::snow2();
  static const auto c = snow2_alpha4_coefficients();
  const Byte top = byte_at(w, 0);
  Byte out[4];
  for (int i = 0; i < 4; ++i) {
    const Byte shifted = i < 3 ? byte_at(w, i + 1) : Byte{0};
    out[i] = shifted ^ gf8_mul(top, c[i], m);
  }
  return word_from_bytes(out[0], out[1], out[2], out[3]);
}

Word mul_alpha_inv_poly(Word w) {
  static const Gf8Modulus m = Gf8Modulus::snow2();
  static const auto c = snow2_alpha_inv_coefficients();
  const Byte low = byte_at(w, 3);
  Byte out[4];
  for (int i = 0; i < 4; ++i) {
    const Byte shifted = i > 0 ? byte_at(w, i - 1) : Byte{0};
    out[i] = shifted ^ gf8_mul(low, c[i], m);
  }
  return word_from_bytes(out[0], out[1], out[2], out[3]);
}

}  // namespace snowlab
