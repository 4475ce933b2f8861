#include "snowlab/hex.hpp"

#include <cctype>
#include <cstdio>

#include "snowlab/errors.hpp"

namespace snowlab {

std::vector<Word> parse_hex_words(std::string_view text, std::size_t expected_words) {
  std::string digits;
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument(std::string("invalid hex digit '") + c + "'");
    }
    digits.push_back(c);
  }
  if (digits.size() % 8 != 0 || (expected_words != 0 && digits.size() != 8 * expected_words)) {
    const std::string want = expected_words != 0 ? std::to_string(8 * expected_words) : "a multiple of 8";
    throw InvalidArgument("expected " + want + " hex digits, got " + std::to_string(digits.size()));
  }
  std::vector<Word> out;
  for (std::size_t i = 0; i < digits.size(); i += 8) {
    out.push_back(static_cast<Word>(std::stoul(digits.substr(i, 8), nullptr, 16)));
  }
  return out;
}

std::string format_word(Word w) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(w));
  return buf;
}

std::string format_words(const std::vector<Word>& words, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i != 0) out += separator;
    out += format_word(words[i]);
  }
  return out;
}

}  // namespace snowlab
