#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "tokscope/byte_level.hpp"
#include "tokscope/unicode.hpp"

using namespace tokscope;

namespace {

std::string cps(std::initializer_list<char32_t> scalars) {
    std::string out;
    for (char32_t cp : scalars) unicode::append_scalar(out, cp);
    return out;
}

}  // namespace

TEST_CASE("utf-8 decode/encode round trip") {
    const std::string text = cps({0x41, 0xE9, 0x4E2D, 0x1F600});
    const auto scalars = unicode::to_scalars(text);
    REQUIRE(scalars == std::vector<char32_t>{0x41, 0xE9, 0x4E2D, 0x1F600});
    REQUIRE(unicode::from_scalars(scalars) == text);
    REQUIRE(unicode::scalar_count(text) == 4);
}

TEST_CASE("utf-8 rejects malformed input") {
    REQUIRE_FALSE(unicode::is_valid_utf8("\xC3"));              // truncated
    REQUIRE_FALSE(unicode::is_valid_utf8("\xC0\xAF"));          // overlong
    REQUIRE_FALSE(unicode::is_valid_utf8("\xED\xA0\x80"));      // surrogate
    REQUIRE_FALSE(unicode::is_valid_utf8("\xFF"));              // bad lead
    REQUIRE(unicode::is_valid_utf8("plain ascii"));
    std::size_t pos = 0;
    REQUIRE_THROWS_AS(unicode::decode_scalar("\x80", pos), Error);
}

TEST_CASE("codepoint classification") {
    REQUIRE(unicode::is_letter(U'a'));
    REQUIRE(unicode::is_letter(0x4E2D));   // 中
    REQUIRE(unicode::is_letter(0x0915));   // क
    REQUIRE_FALSE(unicode::is_letter(U'3'));
    REQUIRE(unicode::is_digit(U'7'));
    REQUIRE(unicode::is_digit(0x0966));    // devanagari zero
    REQUIRE(unicode::is_mark(0x093E));     // devanagari vowel sign aa
    REQUIRE(unicode::is_mark(0x0301));     // combining acute
    REQUIRE_FALSE(unicode::is_mark(U'a'));
    REQUIRE(unicode::is_whitespace(U' '));
    REQUIRE(unicode::is_whitespace(0x3000));
    REQUIRE_FALSE(unicode::is_whitespace(U'_'));
    REQUIRE(unicode::is_han(0x4E2D));
    REQUIRE(unicode::is_han(0x3007));
    REQUIRE_FALSE(unicode::is_han(0x3042));  // hiragana あ
}

TEST_CASE("nfc: reference vectors") {
    // expected values computed with a reference normalizer
    REQUIRE(unicode::to_nfc(cps({0x65, 0x301})) == cps({0xE9}));                    // e + acute
    REQUIRE(unicode::to_nfc(cps({0xE9})) == cps({0xE9}));                           // already composed
    REQUIRE(unicode::to_nfc(cps({0x212B})) == cps({0xC5}));                         // angstrom singleton
    REQUIRE(unicode::to_nfc(cps({0x73, 0x323, 0x307})) == cps({0x1E69}));           // s + dot below + dot above
    REQUIRE(unicode::to_nfc(cps({0x71, 0x307, 0x323})) == cps({0x71, 0x323, 0x307}));  // reorder, no composite
    REQUIRE(unicode::to_nfc(cps({0x1100, 0x1161, 0x11A8})) == cps({0xAC01}));       // hangul L+V+T
    REQUIRE(unicode::to_nfc(cps({0xAC00, 0x11A8})) == cps({0xAC01}));               // hangul LV+T
    REQUIRE(unicode::to_nfc(cps({0x61, 0x328, 0x301})) == cps({0x105, 0x301}));     // a+ogonek then acute
    REQUIRE(unicode::to_nfc(cps({0xFB01})) == cps({0xFB01}));                       // fi ligature is compat-only
    REQUIRE(unicode::to_nfc(cps({0x930, 0x93F})) == cps({0x930, 0x93F}));           // devanagari unaffected
    REQUIRE(unicode::to_nfc("") == "");
    REQUIRE(unicode::to_nfc("plain") == "plain");
}

TEST_CASE("nfc is idempotent on mixed input") {
    const std::string input = cps({0x65, 0x301, 0x4E2D, 0x71, 0x307, 0x323, 0x1100, 0x1161});
    const std::string once = unicode::to_nfc(input);
    REQUIRE(unicode::to_nfc(once) == once);
}

TEST_CASE("byte alphabet: all 256 symbols are distinct and reversible") {
    std::string all_bytes;
    for (int b = 0; b < 256; ++b) all_bytes.push_back(static_cast<char>(b));
    const auto symbols = byte_level::to_symbols(all_bytes);
    REQUIRE(symbols.size() == 256);
    std::string rejoined;
    for (const auto& s : symbols) {
        REQUIRE(byte_level::is_alphabet_symbol(s));
        rejoined += s;
    }
    REQUIRE(byte_level::to_bytes(rejoined) == all_bytes);
}

TEST_CASE("byte alphabet: space maps off itself, letters stay put") {
    REQUIRE(byte_level::byte_symbol(static_cast<std::uint8_t>('a')) == "a");
    REQUIRE(byte_level::byte_symbol(static_cast<std::uint8_t>(' ')) != " ");
    REQUIRE_THROWS_AS(byte_level::to_bytes(cps({0x4E2D})), Error);  // not an alphabet scalar
}
