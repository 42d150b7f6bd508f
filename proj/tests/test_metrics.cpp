#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "tokscope/metrics.hpp"
#include "tokscope/pipeline.hpp"

using namespace tokscope;
using testutil::toy_tokenizer;

namespace {

Corpus make_corpus(std::vector<std::string> docs, std::string language = "test") {
    Corpus corpus;
    corpus.documents = std::move(docs);
    corpus.language = std::move(language);
    corpus.name = "fixture";
    return corpus;
}

}  // namespace

TEST_CASE("fertility is 1.0 when every segment is a vocab token") {
    const Tokenizer tok = toy_tokenizer({"a", "b", "c"}, {});
    const auto report = metrics::evaluate_corpus(tok, make_corpus({"a b c", "c a"}),
                                                 SegmentPolicy::unicode_words());
    REQUIRE(report.fertility == 1.0);
    REQUIRE(report.word_count == 5);
    REQUIRE(report.token_count == 5);
}

TEST_CASE("fertility on the toy merge corpus is exactly 2.0") {
    const Tokenizer tok = toy_tokenizer({"a", "b", "c"}, {{"a", "b"}});
    const auto report = metrics::evaluate_corpus(tok, make_corpus({"abc abc"}),
                                                 SegmentPolicy::unicode_words());
    REQUIRE(report.token_count == 4);
    REQUIRE(report.word_count == 2);
    REQUIRE(report.fertility == 2.0);
}

TEST_CASE("byte-level corpora space-prefix every non-initial word") {
    Corpus train = make_corpus({"ab ab ab"});
    const Tokenizer tok =
        pipeline::train_bpe(train, SegmentPolicy::unicode_words(), 257, true).tokenizer;
    // doc "ab ab": first word bare -> [ab]; second " ab" -> [space, ab]
    const auto report =
        metrics::evaluate_corpus(tok, make_corpus({"ab ab"}), SegmentPolicy::unicode_words());
    REQUIRE(report.word_count == 2);
    REQUIRE(report.token_count == 3);
    REQUIRE(report.fertility == 1.5);
}

TEST_CASE("entropy of a uniform distribution is log2 of the type count") {
    // eight added-token words, equal counts
    std::vector<std::string> words;
    for (char c = 'a'; c < 'i'; ++c) words.push_back(std::string("w") + c);
    const Tokenizer tok = toy_tokenizer({"w"}, {}, words);
    std::string doc;
    for (const auto& w : words) doc += w + " ";
    const auto report = metrics::evaluate_corpus(tok, make_corpus({doc, doc}),
                                                 SegmentPolicy::unicode_words());
    REQUIRE(report.entropy_bits == 3.0);
}

TEST_CASE("entropy of a degenerate distribution is zero") {
    const Tokenizer tok = toy_tokenizer({"a"}, {});
    const auto report = metrics::evaluate_corpus(tok, make_corpus({"a a a a"}),
                                                 SegmentPolicy::unicode_words());
    REQUIRE(report.entropy_bits == 0.0);
}

TEST_CASE("chars per token averages scalar counts over tokens") {
    const Tokenizer tok = toy_tokenizer({"x"}, {}, {"abc", "de"});
    const auto report = metrics::evaluate_corpus(tok, make_corpus({"abc de"}),
                                                 SegmentPolicy::unicode_words());
    REQUIRE(report.char_count == 5);
    REQUIRE(report.token_count == 2);
    REQUIRE(report.chars_per_token == 2.5);
}

TEST_CASE("empty corpora are an explicit error") {
    const Tokenizer tok = toy_tokenizer({"a"}, {});
    REQUIRE_THROWS_AS(metrics::evaluate_corpus(tok, make_corpus({}), SegmentPolicy::unicode_words()),
                      Error);
    // documents with no word segments at all
    REQUIRE_THROWS_AS(
        metrics::evaluate_corpus(tok, make_corpus({"... !!!"}), SegmentPolicy::unicode_words()), Error);
}

TEST_CASE("strr counts single-token words") {
    const Tokenizer tok = toy_tokenizer({"a", "b", "c"}, {{"a", "b"}});

    WordList in_vocab{"en", {"a", "b", "ab"}};
    REQUIRE(metrics::strr(tok, in_vocab).strr == 100.0);

    WordList half{"en", {"ab", "ac"}};
    const auto report = metrics::strr(tok, half);
    REQUIRE(report.n == 2);
    REQUIRE(report.retained == 1);
    REQUIRE(report.strr == 50.0);
    REQUIRE(report.failures.size() == 1);
    REQUIRE(report.failures[0].word == "ac");
    REQUIRE(report.failures[0].token_count == 2);

    // injecting the failing word lifts strr to 100
    const auto injected = pipeline::inject(tok, {"ac"});
    REQUIRE(metrics::strr(injected.tokenizer, half).strr == 100.0);
}

TEST_CASE("strr failures sort by descending length then lexicographically") {
    const Tokenizer tok = toy_tokenizer({"a", "b", "c"}, {});
    WordList list{"en", {"cab", "ba", "abc", "a"}};
    const auto report = metrics::strr(tok, list);
    REQUIRE(report.retained == 1);
    REQUIRE(report.failures.size() == 3);
    REQUIRE(report.failures[0].word == "abc");
    REQUIRE(report.failures[1].word == "cab");
    REQUIRE(report.failures[2].word == "ba");
}

TEST_CASE("strr on an empty wordlist is an error") {
    const Tokenizer tok = toy_tokenizer({"a"}, {});
    WordList empty{"en", {}};
    REQUIRE_THROWS_AS(metrics::strr(tok, empty), Error);
}

TEST_CASE("strr formula matches a direct word-by-word count") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Corpus corpus = testutil::random_corpus(rng, 3, 8);
        const Tokenizer tok = pipeline::train_bpe(corpus, SegmentPolicy::whitespace(),
                                                  6 + testutil::uniform(rng, 1, 20), false)
                                  .tokenizer;
        WordList list{"t", {}};
        std::set<std::string> seen;
        for (int i = 0; i < 30; ++i) {
            const std::string w = testutil::random_word(rng, 1, 6, "abcdef");
            if (seen.insert(w).second) list.words.push_back(w);
        }
        std::size_t retained = 0;
        for (const auto& w : list.words) {
            if (testutil::ref_encode_symbols(tok, w, false).size() == 1) ++retained;
        }
        const auto report = metrics::strr(tok, list, WordForm::Bare);
        REQUIRE(report.retained == retained);
        REQUIRE(report.strr == static_cast<double>(retained) / static_cast<double>(list.words.size()) * 100.0);
        REQUIRE(report.failures.size() == report.n - report.retained);
        REQUIRE(report.strr >= 0.0);
        REQUIRE(report.strr <= 100.0);
        REQUIRE((report.strr == 100.0) == report.failures.empty());
    }
}

TEST_CASE("metrics are invariant under reordering and threading") {
    testutil::Rng rng(37);
    Corpus corpus = testutil::random_corpus(rng, 6, 12);
    const Tokenizer tok =
        pipeline::train_bpe(corpus, SegmentPolicy::unicode_words(), 270, true).tokenizer;

    const auto serial = metrics::evaluate_corpus(tok, corpus, SegmentPolicy::unicode_words(), 1);
    const auto parallel = metrics::evaluate_corpus(tok, corpus, SegmentPolicy::unicode_words(), 4);
    REQUIRE(serial.fertility == parallel.fertility);
    REQUIRE(serial.entropy_bits == parallel.entropy_bits);
    REQUIRE(serial.chars_per_token == parallel.chars_per_token);
    REQUIRE(serial.token_count == parallel.token_count);

    Corpus reversed = corpus;
    std::reverse(reversed.documents.begin(), reversed.documents.end());
    const auto reordered = metrics::evaluate_corpus(tok, reversed, SegmentPolicy::unicode_words(), 1);
    REQUIRE(serial.fertility == reordered.fertility);
    REQUIRE(serial.entropy_bits == reordered.entropy_bits);
    REQUIRE(serial.token_count == reordered.token_count);
}

TEST_CASE("cross-metric identity holds on random corpora") {
    testutil::Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        Corpus corpus = testutil::random_corpus(rng, 2, 10);
        const bool byte_level = trial % 2 == 0;
        const Tokenizer tok = pipeline::train_bpe(corpus, SegmentPolicy::unicode_words(),
                                                  (byte_level ? 256 : 6) + testutil::uniform(rng, 0, 20),
                                                  byte_level)
                                  .tokenizer;
        const auto r = metrics::evaluate_corpus(tok, corpus, SegmentPolicy::unicode_words());
        const double chars_per_word = static_cast<double>(r.char_count) / static_cast<double>(r.word_count);
        REQUIRE(r.fertility * r.chars_per_token ==
                Catch::Approx(chars_per_word).epsilon(1e-9));
        REQUIRE(r.fertility ==
                static_cast<double>(r.token_count) / static_cast<double>(r.word_count));
        // entropy never exceeds log2 of the distinct type count
        REQUIRE(r.entropy_bits <= std::log2(static_cast<double>(r.token_count)) + 1e-12);
    }
}

TEST_CASE("compare produces a deterministic matrix with per-cell errors") {
    const Tokenizer t1 = toy_tokenizer({"a", "b", "c"}, {{"a", "b"}}, {}, "t1");
    const Tokenizer t2 = toy_tokenizer({"a", "b", "c"}, {}, {}, "t2");
    Corpus good = make_corpus({"ab c"});
    good.name = "good";
    Corpus bad = make_corpus({"???"});
    bad.name = "bad";

    const auto cells = metrics::compare_metrics({&t1, &t2}, {&good, &bad}, SegmentPolicy::unicode_words());
    REQUIRE(cells.size() == 4);
    REQUIRE(cells[0].report);
    REQUIRE(cells[1].report);
    REQUIRE_FALSE(cells[2].report);  // bad corpus cells fail without aborting
    REQUIRE_FALSE(cells[3].report);
    REQUIRE(cells[0].report->fertility ==
            metrics::evaluate_corpus(t1, good, SegmentPolicy::unicode_words()).fertility);
    REQUIRE(cells[1].report->fertility ==
            metrics::evaluate_corpus(t2, good, SegmentPolicy::unicode_words()).fertility);

    WordList list{"en", {"ab", "ac"}};
    const auto strr_cells = metrics::compare_strr({&t1}, {&list});
    REQUIRE(strr_cells.size() == 1);
    REQUIRE(strr_cells[0].report->strr == metrics::strr(t1, list).strr);
}
