#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "snowlab/field.hpp"

namespace snowlab {

/// An 8-bit substitution table; construction rejects non-permutations.
class ByteSBox {
 public:
  ByteSBox(std::string name, const std::array<Byte, 256>& table);

  Byte operator()(Byte x) const { return table_[x]; }
  const std::array<Byte, 256>& table() const { return table_; }
  const std::string& name() const { return name_; }
  ByteSBox inverse() const;

  static ByteSBox identity();

 private:
  std::string name_;
  std::array<Byte, 256> table_;
};

/// Rijndael SubBytes: inversion in GF(2^8)/0x11B followed by the affine map.
ByteSBox aes_sbox();
/// Pure inversion S(y) = y^-1, S(0) = 0, in the given field.
ByteSBox inversion_sbox(const Gf8Modulus& m);
/// SNOW 3G "SQ": Dickson polynomial g49 over GF(2^8)/0x169, XOR 0x25.
ByteSBox snow3g_sq_sbox();
/// SNOW 1.0 byte map x = Y^7 + (beta^2 + beta + 1) over GF(2^8)/h.
Byte snow1_byte_map(Byte y);
ByteSBox snow1_byte_sbox();

/// Reads the text format: `name=<id>` then 256 hex bytes, '#' starts a comment.
ByteSBox read_sbox(std::istream& in);
ByteSBox load_sbox_file(const std::filesystem::path& path);
void write_sbox(std::ostream& out, const ByteSBox& sbox);

/// 4x4 matrix over GF(2^8) acting on the big-endian bytes of a word.
class MixMatrix {
 public:
  /// Row-major entries; throws InvalidArgument if the matrix is singular.
  MixMatrix(const std::array<Byte, 16>& entries, const Gf8Modulus& modulus);

  Byte at(int row, int col) const { return entries_[static_cast<std::size_t>(4 * row + col)]; }
  const std::array<Byte, 16>& entries() const { return entries_; }
  const Gf8Modulus& modulus() const { return modulus_; }

  /// Rows (X, X+1, 1, 1) rotated right; the fourth row is (X+1, 1, 1, X).
  static MixMatrix circulant(const Gf8Modulus& m);
  /// Circulant rows except the fourth, which is (X+1, X, 1, 1).
  static MixMatrix literal(const Gf8Modulus& m);
  /// The arrangement used by the 3GPP SNOW 3G S1/S2 layers: (X, 1, 1, X+1) rotated right.
  static MixMatrix threegpp(const Gf8Modulus& m);

 private:
  std::array<Byte, 16> entries_;
  Gf8Modulus modulus_;
};

MixMatrix read_matrix(std::istream& in);

bool is_invertible(const std::array<Byte, 16>& entries, const Gf8Modulus& m);

/// Word-level substitution: byte S-box on each byte, then the mix matrix.
///
/// The fast path folds both steps into four 256-entry word tables; apply_naive
/// recomputes every field product and exists for cross-checking and benchmarks.
/// Which end of the word holds the first column entry b_0.
enum class LaneOrder { kMsbFirst, kLsbFirst };

class SubstitutionLayer {
 public:
  SubstitutionLayer(ByteSBox sbox, MixMatrix matrix, LaneOrder order = LaneOrder::kMsbFirst);

  Word operator()(Word w) const {
    return tables_[0][byte_at(w, 0)] ^ tables_[1][byte_at(w, 1)] ^ tables_[2][byte_at(w, 2)] ^
           tables_[3][byte_at(w, 3)];
  }
  Word apply_naive(Word w) const;

  const ByteSBox& sbox() const { return sbox_; }
  const MixMatrix& matrix() const { return matrix_; }
  LaneOrder order() const { return order_; }

 private:
  // Byte position (0 = most significant) of column entry b_i.
  int position(int lane) const { return order_ == LaneOrder::kMsbFirst ? lane : 3 - lane; }

  ByteSBox sbox_;
  MixMatrix matrix_;
  LaneOrder order_;
  std::array<std::array<Word, 256>, 4> tables_;
};

/// SNOW 2.0 S1 as configured by default: AES S-box, circulant matrix over 0x11B,
/// b_0 in the least significant byte.
const SubstitutionLayer& snow2_s1();
/// Byte inversion over 0xA9 with MixMatrix::literal, b_0 least significant.
const SubstitutionLayer& snow2_s1_literal();
/// SNOW 3G S1 (AES S-box) and S2 (SQ) layers with the 3GPP matrix arrangement.
const SubstitutionLayer& snow3g_s1();
const SubstitutionLayer& snow3g_s2();

inline Word s1_word(Word w) { return snow2_s1()(w); }
inline Word s2_word(Word w) { return snow3g_s2()(w); }

/// Destination of each source bit (LSB = bit 0): output bit perm[j] = input bit j.
class BitPermutation {
 public:
  BitPermutation();  // identity
  explicit BitPermutation(const std::array<std::uint8_t, 32>& destination);

  Word apply(Word w) const;
  bool is_identity() const;
  BitPermutation inverse() const;
  std::uint8_t destination(int source_bit) const { return dest_[static_cast<std::size_t>(source_bit)]; }

 private:
  std::array<std::uint8_t, 32> dest_;
};

/// The four parallel byte maps of the SNOW 1.0 S-box, before the bit permutation.
Word snow1_byte_layer(Word w);
Word snow1_sbox_word(Word w, const BitPermutation& perm);

}  // namespace snowlab
