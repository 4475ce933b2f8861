#include <fstream>
#include <sstream>

#include "doctest.h"
#include "snowlab/errors.hpp"
#include "snowlab/hex.hpp"
#include "snowlab/vectors.hpp"

using namespace snowlab;

TEST_SUITE("io") {
  TEST_CASE("hex words") {
    CHECK(parse_hex_words("0x0123456789abcdef") == std::vector<Word>{0x01234567u, 0x89ABCDEFu});
    CHECK(parse_hex_words("01234567 89ABCDEF", 2).size() == 2);
    CHECK_THROWS_AS(parse_hex_words("0123456", 0), InvalidArgument);
    CHECK_THROWS_AS(parse_hex_words("01234567", 2), InvalidArgument);
    CHECK_THROWS_AS(parse_hex_words("0123456g", 1), InvalidArgument);
    CHECK(format_word(0xABu) == "000000ab");
    CHECK(format_words({1, 2}) == "00000001 00000002");
  }

  TEST_CASE("vector file parsing") {
    std::istringstream good(
        "# comment\n"
        "\n"
        "cipher=snow3g key=2BD6459F82C5B300952C49104881FF48 iv=EA024714AD5C4D84DF1F9B251C0BF45F "
        "discard=0 ks=ABEE9704 7AC31373\n");
    const auto entries = read_vector_file(good);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].line == 3);
    CHECK(entries[0].cipher == CipherId::kSnow3g);
    CHECK(entries[0].expected == std::vector<Word>{0xABEE9704u, 0x7AC31373u});
    CHECK(run_vector(entries[0]).pass);
    CHECK(format_vector_entry(entries[0]).rfind("cipher=snow3g key=2bd6459f", 0) == 0);

    VectorEntry wrong = entries[0];
    wrong.expected[1] ^= 1;
    const VectorOutcome o = run_vector(wrong);
    CHECK_FALSE(o.pass);
    CHECK(o.actual == entries[0].expected);
  }

  TEST_CASE("vector file errors carry line numbers") {
    std::istringstream empty("# nothing here\n");
    CHECK_THROWS_AS(read_vector_file(empty), ParseError);

    std::istringstream unknown("\ncipher=snow2 key=00 iv=00 colour=red ks=00000000\n");
    try {
      read_vector_file(unknown);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }

    std::istringstream short_key("cipher=snow3g key=0011 iv=00000000000000000000000000000000 ks=00000000\n");
    CHECK_THROWS_AS(read_vector_file(short_key), ParseError);
    std::istringstream no_ks("cipher=snow3g key=00000000000000000000000000000000 iv=00000000000000000000000000000000\n");
    CHECK_THROWS_AS(read_vector_file(no_ks), ParseError);
    std::istringstream bad_cipher("cipher=rc4 key=00 iv=00 ks=00000000\n");
    CHECK_THROWS_AS(read_vector_file(bad_cipher), ParseError);
  }

  TEST_CASE("shipped vector file passes") {
    std::ifstream f(SNOWLAB_DATA_DIR "/vectors/snow3g_uea2.txt");
    REQUIRE(f);
    const auto entries = read_vector_file(f);
    CHECK(entries.size() == 3);
    for (const auto& e : entries) CHECK(run_vector(e).pass);
  }
}
