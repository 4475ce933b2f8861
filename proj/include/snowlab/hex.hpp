#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "snowlab/field.hpp"

namespace snowlab {

/// Splits a hex string into 32-bit words, leftmost 8 digits first. Whitespace
/// and an optional 0x prefix are ignored. Throws InvalidArgument when the digit
/// count is not 8 * expected_words (or any multiple of 8 when expected_words is 0).
std::vector<Word> parse_hex_words(std::string_view text, std::size_t expected_words = 0);

std::string format_word(Word w);
std::string format_words(const std::vector<Word>& words, std::string_view separator = " ");

}  // namespace snowlab
