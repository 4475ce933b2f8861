#include "snowlab/sbox.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "snowlab/errors.hpp"

namespace snowlab {
namespace {

bool is_permutation(const std::array<Byte, 256>& table) {
  std::array<bool, 256> seen{};
  for (Byte v : table) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Byte rotl8(Byte x, int k) { return static_cast<Byte>((x << k) | (x >> (8 - k))); }

struct ParsedTable {
  std::string name;
  std::optional<Byte> modulus;
  std::vector<Byte> bytes;
};

ParsedTable parse_table(std::istream& in) {
  ParsedTable out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (tok.rfind("name=", 0) == 0) {
        out.name = tok.substr(5);
      } else if (tok.rfind("modulus=", 0) == 0) {
        out.modulus = static_cast<Byte>(std::stoul(tok.substr(8), nullptr, 16));
      } else {
        if (out.name.empty()) throw ParseError(line_no, "table data before name= line");
        std::size_t used = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(tok, &used, 16);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size() || tok.size() > 2 || v > 0xFF) {
          throw ParseError(line_no, "expected a hex byte, got '" + tok + "'");
        }
        out.bytes.push_back(static_cast<Byte>(v));
      }
    }
  }
  if (out.name.empty()) throw ParseError(line_no, "missing name= line");
  return out;
}

}  // namespace

ByteSBox::ByteSBox(std::string name, const std::array<Byte, 256>& table)
    : name_(std::move(name)), table_(table) {
  if (!is_permutation(table_)) throw InvalidArgument("S-box '" + name_ + "' is not a permutation");
}

ByteSBox ByteSBox::inverse() const {
  std::array<Byte, 256> inv{};
  for (unsigned x = 0; x < 256; ++x) inv[table_[x]] = static_cast<Byte>(x);
  return ByteSBox(name_ + "-inverse", inv);
}

ByteSBox ByteSBox::identity() {
  std::array<Byte, 256> t{};
  for (unsigned x = 0; x < 256; ++x) t[x] = static_cast<Byte>(x);
  return ByteSBox("identity", t);
}

ByteSBox aes_sbox() {
  const Gf8Modulus m = Gf8Modulus::aes();
  std::array<Byte, 256> t{};
  for (unsigned x = 0; x < 256; ++x) {
    const Byte b = gf8_inv(static_cast<Byte>(x), m);
    t[x] = b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63;
  }
  return ByteSBox("aes", t);
}

ByteSBox inversion_sbox(const Gf8Modulus& m) {
  std::array<Byte, 256> t{};
  for (unsigned x = 0; x < 256; ++x) t[x] = gf8_inv(static_cast<Byte>(x), m);
  return ByteSBox("inversion", t);
}

ByteSBox snow3g_sq_sbox() {
  const Gf8Modulus m = Gf8Modulus::snow3g_s2();
  static constexpr unsigned kDicksonTerms[] = {1, 9, 13, 15, 33, 41, 45, 47, 49};
  std::array<Byte, 256> t{};
  for (unsigned x = 0; x < 256; ++x) {
    Byte v = 0x25;
    for (unsigned e : kDicksonTerms) v ^= gf8_pow(static_cast<Byte>(x), e, m);
    t[x] = v;
  }
  return ByteSBox("snow3g-sq", t);
}

Byte snow1_byte_map(Byte y) {
  static const Gf8Modulus h = Gf8Modulus::snow1();
  // beta^2 + beta + 1 in the basis {beta^7, .., beta, 1}.
  constexpr Byte kConstant = 0x04 ^ 0x02 ^ 0x01;
  return gf8_pow(y, 7, h) ^ kConstant;
}

ByteSBox snow1_byte_sbox() {
  std::array<Byte, 256> t{};
  for (unsigned x = 0; x < 256; ++x) t[x] = snow1_byte_map(static_cast<Byte>(x));
  return ByteSBox("snow1", t);
}

ByteSBox read_sbox(std::istream& in) {
  ParsedTable p = parse_table(in);
  if (p.bytes.size() != 256) {
    throw ParseError(0, "S-box '" + p.name + "' has " + std::to_string(p.bytes.size()) +
                            " bytes, expected 256");
  }
  std::array<Byte, 256> t{};
  std::copy(p.bytes.begin(), p.bytes.end(), t.begin());
  return ByteSBox(p.name, t);
}

ByteSBox load_sbox_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open S-box file " + path.string());
  return read_sbox(in);
}

void write_sbox(std::ostream& out, const ByteSBox& sbox) {
  static constexpr char kHex[] = "0123456789abcdef";
  out << "name=" << sbox.name() << '\n';
  for (unsigned i = 0; i < 256; ++i) {
    const Byte v = sbox(static_cast<Byte>(i));
    out << kHex[v >> 4] << kHex[v & 15] << ((i % 16 == 15) ? '\n' : ' ');
  }
}

bool is_invertible(const std::array<Byte, 16>& entries, const Gf8Modulus& m) {
  std::array<Byte, 16> a = entries;
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int r = col; r < 4; ++r) {
      if (a[static_cast<std::size_t>(4 * r + col)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    for (int c = 0; c < 4; ++c) std::swap(a[static_cast<std::size_t>(4 * col + c)], a[static_cast<std::size_t>(4 * pivot + c)]);
    const Byte inv = gf8_inv(a[static_cast<std::size_t>(4 * col + col)], m);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const Byte f = gf8_mul(a[static_cast<std::size_t>(4 * r + col)], inv, m);
      for (int c = 0; c < 4; ++c) {
        a[static_cast<std::size_t>(4 * r + c)] ^= gf8_mul(f, a[static_cast<std::size_t>(4 * col + c)], m);
      }
    }
  }
  return true;
}

MixMatrix::MixMatrix(const std::array<Byte, 16>& entries, const Gf8Modulus& modulus)
    : entries_(entries), modulus_(modulus) {
  if (!is_invertible(entries_, modulus_)) throw InvalidArgument("mix matrix is singular");
}

MixMatrix MixMatrix::circulant(const Gf8Modulus& m) {
  return MixMatrix({2, 3, 1, 1,  //
                    1, 2, 3, 1,  //
                    1, 1, 2, 3,  //
                    3, 1, 1, 2},
                   m);
}

MixMatrix MixMatrix::literal(const Gf8Modulus& m) {
  return MixMatrix({2, 3, 1, 1,  //
                    1, 2, 3, 1,  //
                    1, 1, 2, 3,  //
                    3, 2, 1, 1},
                   m);
}

MixMatrix MixMatrix::threegpp(const Gf8Modulus& m) {
  return MixMatrix({2, 1, 1, 3,  //
                    3, 2, 1, 1,  //
                    1, 3, 2, 1,  //
                    1, 1, 3, 2},
                   m);
}

MixMatrix read_matrix(std::istream& in) {
  ParsedTable p = parse_table(in);
  if (p.bytes.size() != 16) throw ParseError(0, "matrix '" + p.name + "' must have 16 bytes");
  std::array<Byte, 16> e{};
  std::copy(p.bytes.begin(), p.bytes.end(), e.begin());
  return MixMatrix(e, Gf8Modulus(p.modulus.value_or(0x1B)));
}

SubstitutionLayer::SubstitutionLayer(ByteSBox sbox, MixMatrix matrix, LaneOrder order)
    : sbox_(std::move(sbox)), matrix_(std::move(matrix)), order_(order) {
  for (int col = 0; col < 4; ++col) {
    for (unsigned x = 0; x < 256; ++x) {
      const Byte s = sbox_(static_cast<Byte>(x));
      Byte out[4];
      for (int row = 0; row < 4; ++row) out[position(row)] = gf8_mul(matrix_.at(row, col), s, matrix_.modulus());
      tables_[static_cast<std::size_t>(position(col))][x] = word_from_bytes(out[0], out[1], out[2], out[3]);
    }
  }
}

Word SubstitutionLayer::apply_naive(Word w) const {
  Byte s[4];
  for (int lane = 0; lane < 4; ++lane) s[lane] = sbox_(byte_at(w, position(lane)));
  Byte out[4];
  for (int row = 0; row < 4; ++row) {
    Byte acc = 0;
    for (int col = 0; col < 4; ++col) acc ^= gf8_mul(matrix_.at(row, col), s[col], matrix_.modulus());
    out[position(row)] = acc;
  }
  return word_from_bytes(out[0], out[1], out[2], out[3]);
}

const SubstitutionLayer& snow2_s1() {
  static const SubstitutionLayer layer(aes_sbox(), MixMatrix::circulant(Gf8Modulus::aes()), LaneOrder::kLsbFirst);
  return layer;
}

const SubstitutionLayer& snow2_s1_literal() {
  static const SubstitutionLayer layer(inversion_sbox(Gf8Modulus::snow2()),
                                       MixMatrix::literal(Gf8Modulus::snow2()), LaneOrder::kLsbFirst);
  return layer;
}

const SubstitutionLayer& snow3g_s1() {
  static const SubstitutionLayer layer(aes_sbox(), MixMatrix::threegpp(Gf8Modulus::aes()));
  return layer;
}

const SubstitutionLayer& snow3g_s2() {
  static const SubstitutionLayer layer(snow3g_sq_sbox(), MixMatrix::threegpp(Gf8Modulus::snow3g_s2()));
  return layer;
}

BitPermutation::BitPermutation() {
  for (std::uint8_t i = 0; i < 32; ++i) dest_[i] = i;
}

BitPermutation::BitPermutation(const std::array<std::uint8_t, 32>& destination) : dest_(destination) {
  std::array<bool, 32> seen{};
  for (auto d : dest_) {
    if (d >= 32 || seen[d]) throw InvalidArgument("bit permutation is not a permutation of 0..31");
    seen[d] = true;
  }
}

Word BitPermutation::apply(Word w) const {
  Word out = 0;
  for (int j = 0; j < 32; ++j) out |= ((w >> j) & 1u) << dest_[static_cast<std::size_t>(j)];
  return out;
}

bool BitPermutation::is_identity() const {
  for (std::uint8_t i = 0; i < 32; ++i) {
    if (dest_[i] != i) return false;
  }
  return true;
}

BitPermutation BitPermutation::inverse() const {
  std::array<std::uint8_t, 32> inv{};
  for (std::uint8_t j = 0; j < 32; ++j) inv[dest_[j]] = j;
  return BitPermutation(inv);
}

Word snow1_byte_layer(Word w) {
  static const ByteSBox table = snow1_byte_sbox();
  return word_from_bytes(table(byte_at(w, 0)), table(byte_at(w, 1)), table(byte_at(w, 2)),
                         table(byte_at(w, 3)));
}

Word snow1_sbox_word(Word w, const BitPermutation& perm) { return perm.apply(snow1_byte_layer(w)); }

}  // namespace snowlab
