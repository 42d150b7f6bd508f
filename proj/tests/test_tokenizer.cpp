#include <catch2/catch_amalgamated.hpp>

#include <future>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tokscope/pipeline.hpp"
#include "tokscope/tokenizer.hpp"

using namespace tokscope;
using testutil::toy_tokenizer;

namespace {

const std::vector<std::string> kAbc = {"a", "b", "c"};

}  // namespace

TEST_CASE("encode applies the lowest-rank merge") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}});
    const Encoding enc = tok.encode_word("abc");
    REQUIRE(enc.tokens == std::vector<std::string>{"ab", "c"});
    REQUIRE(enc.size() == 2);
    REQUIRE(enc.ids.size() == enc.tokens.size());
}

TEST_CASE("single base symbol encodes to itself") {
    const Tokenizer tok = toy_tokenizer(kAbc, {});
    REQUIRE(tok.encode_word("c").tokens == std::vector<std::string>{"c"});
}

TEST_CASE("added token matches the whole word and skips BPE") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}}, {"ac"});
    const Encoding enc = tok.encode_word("ac");
    REQUIRE(enc.size() == 1);
    REQUIRE(enc.tokens[0] == "ac");
    // prefix flag is irrelevant for added tokens
    REQUIRE(tok.encode_word("ac", true).size() == 1);
    // and non-matching words still go through merges
    REQUIRE(tok.encode_word("abc").size() == 2);
}

TEST_CASE("merge order follows rank, not adjacency") {
    // (b,c) outranks (a,b): "abc" -> [a, bc]
    const Tokenizer tok = toy_tokenizer(kAbc, {{"b", "c"}, {"a", "b"}});
    REQUIRE(tok.encode_word("abc").tokens == std::vector<std::string>{"a", "bc"});
}

TEST_CASE("equal-rank positions merge left to right") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "a"}});
    REQUIRE(tok.encode_word("aaa").tokens == std::vector<std::string>{"aa", "a"});
}

TEST_CASE("decode inverts encode") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}});
    const Encoding enc = tok.encode_word("abc");
    REQUIRE(tok.decode(enc.ids) == "abc");
    REQUIRE_THROWS_AS(tok.decode({9999}), Error);
}

TEST_CASE("decode concatenates token strings") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}});
    const TokenId ab = tok.vocab().at("ab");
    const TokenId c = tok.vocab().at("c");
    REQUIRE(tok.decode({ab, c}) == "abc");
}

TEST_CASE("space prefix participates in merging") {
    const Tokenizer tok = toy_tokenizer({"a", "b", " "}, {{" ", "a"}});
    const Encoding enc = tok.encode_word("ab", true);
    REQUIRE(enc.source == " ab");
    REQUIRE(enc.tokens == std::vector<std::string>{" a", "b"});
    REQUIRE(tok.decode(enc.ids) == " ab");
}

TEST_CASE("is_single_token honors the word form policy") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}}, {"ac"});
    REQUIRE(tok.is_single_token("ab", WordForm::Bare));
    REQUIRE_FALSE(tok.is_single_token("abc", WordForm::Bare));
    REQUIRE(tok.is_single_token("ac", WordForm::Bare));  // added token
    REQUIRE(tok.is_single_token("ac", WordForm::Either));

    // "xx" is a single token only in its space-prefixed form
    const Tokenizer spaced = toy_tokenizer({"x", " "}, {{" ", "x"}, {" x", "x"}});
    REQUIRE_FALSE(spaced.is_single_token("xx", WordForm::Bare));
    REQUIRE(spaced.is_single_token("xx", WordForm::SpacePrefixed));
    REQUIRE(spaced.is_single_token("xx", WordForm::Either));
    REQUIRE(spaced.encoding_length("xx", WordForm::Either) == 1);
}

TEST_CASE("encode_text maps encode_word over segments") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}});
    REQUIRE(tok.encode_text({}).empty());
    const auto encs = tok.encode_text({"abc", "c"});
    REQUIRE(encs.size() == 2);
    REQUIRE(encs[0].tokens == std::vector<std::string>{"ab", "c"});
    REQUIRE(encs[1].tokens == std::vector<std::string>{"c"});

    const auto twice = tok.encode_text({"abc", "abc"});
    REQUIRE(twice[0].ids == twice[1].ids);

    try {
        tok.encode_text({"abc", "zz"});
        FAIL("expected error");
    } catch (const Error& e) {
        REQUIRE(std::string(e.what()).find("segment 1") != std::string::npos);
    }
}

TEST_CASE("errors: empty input and out-of-vocab symbols") {
    const Tokenizer tok = toy_tokenizer(kAbc, {});
    REQUIRE_THROWS_AS(tok.encode_word(""), Error);
    REQUIRE_THROWS_AS(tok.encode_word("xyz"), Error);  // symbols absent from vocab
}

TEST_CASE("construction validates the invariants") {
    using Vocab = std::unordered_map<std::string, TokenId>;
    // duplicate ids
    REQUIRE_THROWS_AS(Tokenizer("t", false, Vocab{{"a", 0}, {"b", 0}}, {}, {}), Error);
    // negative id
    REQUIRE_THROWS_AS(Tokenizer("t", false, Vocab{{"a", -1}}, {}, {}), Error);
    // merge result missing from vocab
    REQUIRE_THROWS_AS(Tokenizer("t", false, Vocab{{"a", 0}, {"b", 1}}, {{"a", "b"}}, {}), Error);
    // merge side neither vocab entry nor base symbol
    REQUIRE_THROWS_AS(Tokenizer("t", false, Vocab{{"a", 0}, {"xya", 2}}, {{"xy", "a"}}, {}), Error);
    // duplicate added token
    REQUIRE_THROWS_AS(Tokenizer("t", false, Vocab{{"a", 0}}, {}, {"q", "q"}), Error);
    // multi-scalar merge side that IS a vocab entry is fine
    REQUIRE_NOTHROW(Tokenizer("t", false, Vocab{{"a", 0}, {"xy", 1}, {"xya", 2}, {"x", 3}, {"y", 4}},
                              {{"x", "y"}, {"xy", "a"}}, {}));
}

TEST_CASE("vocab size counts fresh added tokens only") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}}, {"ab", "zz"});
    // "ab" is already a vocab entry, "zz" is new
    REQUIRE(tok.vocab_size() == 5);
    REQUIRE(tok.vocab().size() == 4);
}

TEST_CASE("byte-level round trip on random words") {
    testutil::Rng rng(7);
    tokscope::Corpus corpus = testutil::random_corpus(rng, 5, 10);
    const Tokenizer tok =
        tokscope::pipeline::train_bpe(corpus, SegmentPolicy::whitespace(), 280, true).tokenizer;
    for (int i = 0; i < 500; ++i) {
        const std::string word = testutil::random_utf8_word(rng, 1, 8);
        const Encoding enc = tok.encode_word(word);
        REQUIRE(tok.decode(enc.ids) == word);
        REQUIRE(enc.size() >= 1);
        REQUIRE(enc.size() <= word.size());
    }
}

TEST_CASE("encoding matches brute-force reference on random tokenizers") {
    testutil::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        tokscope::Corpus corpus = testutil::random_corpus(rng, 3, 10);
        const bool byte_level = trial % 2 == 0;
        const std::size_t base = byte_level ? 256 : 6;
        const auto trained = tokscope::pipeline::train_bpe(
            corpus, SegmentPolicy::whitespace(), base + testutil::uniform(rng, 1, 24), byte_level);
        for (int w = 0; w < 20; ++w) {
            const std::string word = testutil::random_word(rng, 1, 12, "abcdef");
            const bool prefix = byte_level && w % 3 == 0;
            const Encoding enc = trained.tokenizer.encode_word(word, prefix);
            REQUIRE(enc.tokens == testutil::ref_encode_symbols(trained.tokenizer, word, prefix));
        }
    }
}

TEST_CASE("encoding is deterministic across threads") {
    const Tokenizer tok = toy_tokenizer(kAbc, {{"a", "b"}, {"ab", "c"}});
    const Encoding expected = tok.encode_word("abcabc");
    std::vector<std::future<Encoding>> futures;
    for (int i = 0; i < 8; ++i) {
        futures.push_back(std::async(std::launch::async, [&] { return tok.encode_word("abcabc"); }));
    }
    for (auto& f : futures) {
        const Encoding got = f.get();
        REQUIRE(got.ids == expected.ids);
        REQUIRE(got.tokens == expected.tokens);
    }
}
