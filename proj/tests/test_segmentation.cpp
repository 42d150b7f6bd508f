#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tokscope/segmentation.hpp"

using namespace tokscope;

namespace {

std::vector<std::string> texts(const std::vector<Segment>& segments) {
    std::vector<std::string> out;
    for (const auto& s : segments) out.push_back(s.text);
    return out;
}

// letters and digits of a string, in order
std::string word_chars(const std::string& text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = unicode::decode_scalar(text, pos);
        if (unicode::is_letter(cp) || unicode::is_digit(cp)) out += text.substr(start, pos - start);
    }
    return out;
}

}  // namespace

TEST_CASE("unicode-words splits on whitespace and drops punctuation runs") {
    REQUIRE(texts(segment("hello world", SegmentPolicy::unicode_words())) ==
            std::vector<std::string>{"hello", "world"});
    REQUIRE(texts(segment("hello, world!", SegmentPolicy::unicode_words())) ==
            std::vector<std::string>{"hello", "world"});
    REQUIRE(segment("... --- !!!", SegmentPolicy::unicode_words()).empty());
    REQUIRE(texts(segment("x3 4y 12", SegmentPolicy::unicode_words())) ==
            std::vector<std::string>{"x3", "4y", "12"});
}

TEST_CASE("unicode-words keeps word-internal apostrophes and marks") {
    REQUIRE(texts(segment("don't stop", SegmentPolicy::unicode_words())) ==
            std::vector<std::string>{"don't", "stop"});
    REQUIRE(texts(segment("l'eau 'quoted'", SegmentPolicy::unicode_words())) ==
            std::vector<std::string>{"l'eau", "quoted"});
    // Devanagari vowel signs are marks and must stay attached
    const auto hindi = segment("नमस्ते दुनिया",
                               SegmentPolicy::unicode_words());
    REQUIRE(hindi.size() == 2);
    REQUIRE(hindi[0].char_count == 6);
}

TEST_CASE("whitespace mode keeps punctuation attached") {
    REQUIRE(texts(segment("hello, world!", SegmentPolicy::whitespace())) ==
            std::vector<std::string>{"hello,", "world!"});
    REQUIRE(segment("   \t\n  ", SegmentPolicy::whitespace()).empty());
}

TEST_CASE("han-per-char emits one segment per ideograph") {
    const auto segs = segment("我们去", SegmentPolicy::han_per_char());
    REQUIRE(texts(segs) == std::vector<std::string>{"我", "们", "去"});
    for (const auto& s : segs) {
        REQUIRE(s.char_count == 1);
        REQUIRE(s.script == ScriptTag::Han);
    }
}

TEST_CASE("han-per-char falls back to unicode-words for other spans") {
    const auto segs = segment("hello我们world", SegmentPolicy::han_per_char());
    REQUIRE(texts(segs) == std::vector<std::string>{"hello", "我", "们", "world"});
}

TEST_CASE("han-greedy-dict prefers the longest dictionary match") {
    const auto dict = std::make_shared<HanDictionary>(
        std::vector<std::string>{"我们", "我们去"});
    const auto segs = segment("我们去吗", SegmentPolicy::han_greedy(dict));
    REQUIRE(texts(segs) == std::vector<std::string>{"我们去", "吗"});

    const auto two = std::make_shared<HanDictionary>(std::vector<std::string>{"我们"});
    REQUIRE(texts(segment("我们去", SegmentPolicy::han_greedy(two))) ==
            std::vector<std::string>{"我们", "去"});
}

TEST_CASE("han-greedy-dict without a dictionary is a configuration error") {
    REQUIRE_THROWS_AS(segment("我", SegmentPolicy::han_greedy(nullptr)), Error);
    const auto empty = std::make_shared<HanDictionary>(std::vector<std::string>{});
    REQUIRE_THROWS_AS(segment("我", SegmentPolicy::han_greedy(empty)), Error);
}

TEST_CASE("classify_script looks at letters only") {
    REQUIRE(classify_script("hello") == ScriptTag::Spaced);
    REQUIRE(classify_script("我们") == ScriptTag::Han);
    REQUIRE(classify_script("hello我们") == ScriptTag::Mixed);
    REQUIRE(classify_script("123 ...") == ScriptTag::Spaced);
    REQUIRE(classify_script("我, 们!") == ScriptTag::Han);  // punctuation ignored
}

TEST_CASE("segment char counts are scalar counts") {
    const auto segs = segment("café 我们", SegmentPolicy::unicode_words());
    REQUIRE(segs.size() == 2);
    REQUIRE(segs[0].char_count == 4);
    REQUIRE(segs[1].char_count == 2);
}

TEST_CASE("property: segmentation preserves letter/digit order") {
    testutil::Rng rng(11);
    const std::vector<SegmentPolicy> policies = {SegmentPolicy::unicode_words(),
                                                 SegmentPolicy::whitespace(),
                                                 SegmentPolicy::han_per_char()};
    for (int trial = 0; trial < 200; ++trial) {
        std::string doc;
        const int n = testutil::uniform(rng, 0, 40);
        const std::string pool = "ab c.:!  \t9";
        for (int i = 0; i < n; ++i) {
            switch (testutil::uniform(rng, 0, 5)) {
                case 0: unicode::append_scalar(doc, 0x4E00 + testutil::uniform(rng, 0, 50)); break;
                case 1: unicode::append_scalar(doc, 0x301); break;
                default: doc.push_back(pool[testutil::uniform(rng, 0, static_cast<int>(pool.size()) - 1)]);
            }
        }
        for (const auto& policy : policies) {
            const auto segs = segment(doc, policy);
            std::string joined;
            for (const auto& s : segs) {
                joined += word_chars(s.text);
                REQUIRE(s.char_count == unicode::scalar_count(s.text));
                REQUIRE(s.char_count >= 1);
            }
            REQUIRE(joined == word_chars(doc));
            // determinism
            const auto again = segment(doc, policy);
            REQUIRE(texts(again) == texts(segs));
        }
    }
}

TEST_CASE("property: han-per-char yields one segment per scalar on pure han") {
    testutil::Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::string doc;
        const int n = testutil::uniform(rng, 1, 30);
        for (int i = 0; i < n; ++i) unicode::append_scalar(doc, 0x4E00 + testutil::uniform(rng, 0, 500));
        const auto segs = segment(doc, SegmentPolicy::han_per_char());
        REQUIRE(segs.size() == static_cast<std::size_t>(n));
    }
}
