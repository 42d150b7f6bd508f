#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <variant>
#include <vector>

#include "helpers.hpp"
#include "tokscope/io.hpp"
#include "tokscope/pipeline.hpp"

using namespace tokscope;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("tokscope-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p.string();
    }
};

}  // namespace

TEST_CASE("native tokenizer files load with counted entries") {
    TempDir dir;
    const std::string path = dir.file("toy.json", R"({
        "name": "toy", "byte_level": false,
        "vocab": {"a": 0, "b": 1, "c": 2, "ab": 3},
        "merges": ["a b"],
        "added_tokens": []
    })");
    const Tokenizer tok = io::load_tokenizer(path);
    REQUIRE(tok.name() == "toy");
    REQUIRE_FALSE(tok.byte_level());
    REQUIRE(tok.vocab_size() == 4);
    REQUIRE(tok.merges().size() == 1);
    REQUIRE(tok.encode_word("abc").size() == 2);
}

TEST_CASE("a mergeless file splits every multi-symbol word fully") {
    TempDir dir;
    const std::string path = dir.file("base.json",
                                      R"({"byte_level": false, "vocab": {"a": 0, "b": 1}, "merges": []})");
    const Tokenizer tok = io::load_tokenizer(path);
    REQUIRE(tok.encode_word("abab").size() == 4);
    REQUIRE(tok.name() == "base");  // falls back to the file stem
}

TEST_CASE("tokenizer load errors are located") {
    TempDir dir;
    REQUIRE_THROWS_AS(io::load_tokenizer(dir.file("bad.json", "{not json")), Error);
    REQUIRE_THROWS_AS(io::load_tokenizer(dir.file("novocab.json", R"({"merges": []})")), Error);
    // merge references a symbol that is neither vocab nor base
    REQUIRE_THROWS_AS(io::load_tokenizer(dir.file(
                          "badmerge.json",
                          R"({"byte_level": false, "vocab": {"a": 0, "xya": 1}, "merges": ["xy a"]})")),
                      Error);
    // duplicate ids
    REQUIRE_THROWS_AS(
        io::load_tokenizer(dir.file("dupid.json",
                                    R"({"byte_level": false, "vocab": {"a": 0, "b": 0}, "merges": []})")),
        Error);
    REQUIRE_THROWS_AS(io::load_tokenizer((dir.path / "missing.json").string()), Error);
}

TEST_CASE("unknown native fields produce a warning, not an error") {
    TempDir dir;
    io::LoadStats stats;
    const std::string path = dir.file(
        "extra.json", R"({"byte_level": false, "vocab": {"a": 0}, "merges": [], "custom": 1})");
    REQUIRE_NOTHROW(io::load_tokenizer(path, &stats));
    REQUIRE(stats.warnings.size() == 1);
    REQUIRE(stats.warnings[0].find("custom") != std::string::npos);
}

TEST_CASE("public-layout tokenizer files are accepted") {
    TempDir dir;
    const std::string path = dir.file("hf.json", R"({
        "added_tokens": [{"id": 5, "content": "<|end|>"}],
        "pre_tokenizer": {"type": "Sequence", "pretokenizers": [{"type": "ByteLevel"}]},
        "model": {
            "type": "BPE",
            "vocab": {"a": 0, "b": 1, "ab": 2, "c": 3, "abc": 4},
            "merges": ["a b", ["ab", "c"]]
        }
    })");
    const Tokenizer tok = io::load_tokenizer(path);
    REQUIRE(tok.byte_level());
    REQUIRE(tok.vocab_size() == 6);
    REQUIRE(tok.added_tokens() == std::vector<std::string>{"<|end|>"});
    REQUIRE(tok.merges().size() == 2);
    REQUIRE(tok.encode_word("abc").size() == 1);
}

TEST_CASE("save/load round trip is field-exact") {
    testutil::Rng rng(53);
    TempDir dir;
    for (int trial = 0; trial < 10; ++trial) {
        Corpus corpus = testutil::random_corpus(rng, 2, 8);
        const bool byte_level = trial % 2 == 0;
        Tokenizer trained = pipeline::train_bpe(corpus, SegmentPolicy::whitespace(),
                                                (byte_level ? 256 : 6) + testutil::uniform(rng, 0, 16),
                                                byte_level, "rt")
                                .tokenizer;
        const Tokenizer tok = trained.with_added_tokens({"zz", "我们"});
        const std::string path = dir.file("rt" + std::to_string(trial) + ".json", "");
        io::save_tokenizer(tok, path);
        const Tokenizer back = io::load_tokenizer(path);
        REQUIRE(back.name() == tok.name());
        REQUIRE(back.byte_level() == tok.byte_level());
        REQUIRE(back.vocab() == tok.vocab());
        REQUIRE(back.merges() == tok.merges());
        REQUIRE(back.added_tokens() == tok.added_tokens());
        REQUIRE(back.vocab_size() == tok.vocab_size());
    }
}

TEST_CASE("merge sides containing spaces survive the round trip") {
    using Vocab = std::unordered_map<std::string, TokenId>;
    const Tokenizer tok("spacey", false, Vocab{{" ", 0}, {"a", 1}, {" a", 2}, {" ab", 3}, {"b", 4}},
                        {{" ", "a"}, {" a", "b"}}, {});
    TempDir dir;
    const std::string path = (dir.path / "spacey.json").string();
    io::save_tokenizer(tok, path);
    const Tokenizer back = io::load_tokenizer(path);
    REQUIRE(back.merges() == tok.merges());
    REQUIRE(back.vocab() == tok.vocab());
}

TEST_CASE("saving to an unwritable path reports the path") {
    const Tokenizer tok = testutil::toy_tokenizer({"a"}, {});
    try {
        io::save_tokenizer(tok, "/nonexistent-dir/t.json");
        FAIL("expected error");
    } catch (const Error& e) {
        REQUIRE(std::string(e.what()).find("/nonexistent-dir/t.json") != std::string::npos);
    }
}

TEST_CASE("line corpora load one document per line") {
    TempDir dir;
    io::LoadStats stats;
    const std::string path = dir.file("c.txt", "first doc\n\nsecond doc\n");
    const Corpus corpus = io::load_corpus(path, io::CorpusFormat::Lines, "en", Domain::Formal, &stats);
    REQUIRE(corpus.documents == std::vector<std::string>{"first doc", "second doc"});
    REQUIRE(corpus.language == "en");
    REQUIRE(corpus.domain == Domain::Formal);
    REQUIRE(stats.skipped_lines == 1);
}

TEST_CASE("jsonl corpora honor per-file tag overrides") {
    TempDir dir;
    const std::string path = dir.file(
        "c.jsonl", "{\"text\": \"hi\", \"domain\": \"informal\"}\n{\"text\": \"there\"}\n");
    const Corpus corpus = io::load_corpus(path, io::CorpusFormat::Jsonl, "en", Domain::Unspecified);
    REQUIRE(corpus.documents.size() == 2);
    REQUIRE(corpus.domain == Domain::Informal);

    const std::string bad = dir.file("bad.jsonl", "{\"no_text\": 1}\n");
    REQUIRE_THROWS_AS(io::load_corpus(bad, io::CorpusFormat::Jsonl), Error);
}

TEST_CASE("corpora with invalid utf-8 are rejected with a line number") {
    TempDir dir;
    const std::string path = dir.file("bad.txt", "fine\nbroken \xFF\n");
    try {
        io::load_corpus(path, io::CorpusFormat::Lines);
        FAIL("expected error");
    } catch (const Error& e) {
        REQUIRE(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("wordlists dedup in order after NFC") {
    TempDir dir;
    // "café" written composed and decomposed collapses to one entry
    const std::string path =
        dir.file("words.txt", "the\ncaf\xC3\xA9\ncafe\xCC\x81\nof\nthe\n");
    const auto loaded = io::load_wordlist(path);
    const auto& list = std::get<WordList>(loaded);
    REQUIRE(list.words.size() == 3);
    REQUIRE(list.words[0] == "the");
    REQUIRE(list.words[2] == "of");
    REQUIRE(list.language == "words");
}

TEST_CASE("parallel wordlists dedup by pair and keep alignment") {
    TempDir dir;
    const std::string path = dir.file("en-fr.tsv", "the\tle\nof\tde\nthe\tle\n");
    const auto loaded = io::load_wordlist(path);
    const auto& parallel = std::get<ParallelWordList>(loaded);
    REQUIRE(parallel.size() == 2);
    REQUIRE(parallel.source.language == "en");
    REQUIRE(parallel.target.language == "fr");
    REQUIRE(parallel.pair(0) == std::pair<std::string, std::string>{"the", "le"});
}

TEST_CASE("wordlist format errors name the line") {
    TempDir dir;
    try {
        io::load_wordlist(dir.file("bad.tsv", "a\tb\tc\n"));
        FAIL("expected error");
    } catch (const Error& e) {
        REQUIRE(std::string(e.what()).find(":1") != std::string::npos);
    }
    REQUIRE_THROWS_AS(io::load_wordlist(dir.file("mixed.tsv", "a\tb\nplain\n")), Error);
    REQUIRE_THROWS_AS(io::load_wordlist(dir.file("empty.txt", "# only comments\n")), Error);
    REQUIRE_THROWS_AS(io::load_wordlist(dir.file("ws.txt", "two words\n")), Error);
}

TEST_CASE("wordlist language directive wins over the filename") {
    TempDir dir;
    const std::string path = dir.file("anything.txt", "#lang: hi\nword\n");
    const auto loaded = io::load_wordlist(path);
    REQUIRE(std::get<WordList>(loaded).language == "hi");
}

TEST_CASE("wordlist loading is idempotent on its own dump") {
    TempDir dir;
    const std::string path = dir.file("w.txt", "b\na\ncaf\xC3\xA9\nb\n");
    const auto loaded = io::load_wordlist(path);
    const WordList& first = std::get<WordList>(loaded);
    std::string dump;
    for (const auto& w : first.words) dump += w + "\n";
    const std::string path2 = dir.file("w2.txt", dump);
    const auto reloaded = io::load_wordlist(path2);
    REQUIRE(std::get<WordList>(reloaded).words == first.words);
}

TEST_CASE("dictionaries reuse the wordlist format") {
    TempDir dir;
    const std::string path = dir.file("dict.txt", "我们\n他们\n");
    const auto dict = io::load_dictionary(path);
    REQUIRE(dict->size() == 2);
    REQUIRE(dict->contains("我们"));
    REQUIRE(dict->max_scalars() == 2);
}
