#pragma once

// Reference implementations and random generators shared by the unit and
// acceptance suites. The reference encoder is deliberately written from
// scratch against the tokenizer's raw data (merge list, vocab map, added
// list) and never calls into the library's encode path.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tokscope/corpus.hpp"
#include "tokscope/tokenizer.hpp"

namespace testutil {

// --- reference byte alphabet (recomputed, not shared with the library) -----

inline std::string ref_codepoint_utf8(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

inline const std::vector<std::string>& ref_byte_symbols_table() {
    static const std::vector<std::string> table = [] {
        std::vector<std::string> symbols(256);
        int next = 256;
        for (int b = 0; b < 256; ++b) {
            const bool printable = (b >= 33 && b <= 126) || (b >= 161 && b <= 172) || (b >= 174 && b <= 255);
            symbols[b] = ref_codepoint_utf8(printable ? static_cast<char32_t>(b)
                                                      : static_cast<char32_t>(next++));
        }
        return symbols;
    }();
    return table;
}

// --- reference encoder ------------------------------------------------------

inline std::vector<std::string> ref_initial_symbols(const std::string& text, bool byte_level) {
    std::vector<std::string> symbols;
    if (byte_level) {
        for (unsigned char b : text) symbols.push_back(ref_byte_symbols_table()[b]);
        return symbols;
    }
    // split on UTF-8 lead bytes
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t len = 1;
        const auto b = static_cast<unsigned char>(text[i]);
        if ((b & 0xF8) == 0xF0) len = 4;
        else if ((b & 0xF0) == 0xE0) len = 3;
        else if ((b & 0xE0) == 0xC0) len = 2;
        symbols.push_back(text.substr(i, len));
        i += len;
    }
    return symbols;
}

/// Rescans every adjacent pair, finds the globally lowest-rank merge by a
/// linear search over the merge list, applies it at the leftmost position,
/// and repeats until no merge applies.
inline std::vector<std::string> ref_encode_symbols(const tokscope::Tokenizer& tok,
                                                   const std::string& word, bool space_prefix) {
    for (const auto& added : tok.added_tokens()) {
        if (added == word) return {word};
    }
    const std::string text = space_prefix ? " " + word : word;
    std::vector<std::string> symbols = ref_initial_symbols(text, tok.byte_level());
    const auto& merges = tok.merges();
    while (true) {
        std::size_t best_rank = merges.size();
        std::size_t best_pos = 0;
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            for (std::size_t rank = 0; rank < best_rank; ++rank) {
                if (merges[rank].first == symbols[i] && merges[rank].second == symbols[i + 1]) {
                    best_rank = rank;
                    best_pos = i;
                    break;
                }
            }
        }
        if (best_rank == merges.size()) break;
        symbols[best_pos] += symbols[best_pos + 1];
        symbols.erase(symbols.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
    }
    return symbols;
}

// --- random generators -------------------------------------------------------

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::string random_word(Rng& rng, int min_len, int max_len, const std::string& alphabet) {
    const int len = uniform(rng, min_len, max_len);
    std::string word;
    for (int i = 0; i < len; ++i) word.push_back(alphabet[uniform(rng, 0, static_cast<int>(alphabet.size()) - 1)]);
    return word;
}

inline tokscope::Corpus random_corpus(Rng& rng, int min_docs, int max_docs,
                                      const std::string& alphabet = "abcdef") {
    tokscope::Corpus corpus;
    corpus.language = "test";
    corpus.name = "random";
    const int docs = uniform(rng, min_docs, max_docs);
    for (int d = 0; d < docs; ++d) {
        std::string doc;
        const int words = uniform(rng, 1, 8);
        for (int w = 0; w < words; ++w) {
            if (w) doc += " ";
            doc += random_word(rng, 1, 6, alphabet);
        }
        corpus.documents.push_back(doc);
    }
    // one document spelling out the alphabet, so character-mode training
    // always covers every symbol later probe words may use
    std::string coverage;
    for (char c : alphabet) {
        if (!coverage.empty()) coverage += " ";
        coverage += c;
    }
    corpus.documents.push_back(coverage);
    return corpus;
}

/// Random valid UTF-8 (no surrogates, no U+0000 so words stay shell-safe).
inline std::string random_utf8_word(Rng& rng, int min_scalars, int max_scalars) {
    const int n = uniform(rng, min_scalars, max_scalars);
    std::string out;
    for (int i = 0; i < n; ++i) {
        char32_t cp;
        switch (uniform(rng, 0, 3)) {
            case 0: cp = static_cast<char32_t>(uniform(rng, 0x21, 0x7E)); break;
            case 1: cp = static_cast<char32_t>(uniform(rng, 0xA1, 0x7FF)); break;
            case 2: cp = static_cast<char32_t>(uniform(rng, 0x4E00, 0x9FFF)); break;
            default: cp = static_cast<char32_t>(uniform(rng, 0x10000, 0x10FFF)); break;
        }
        if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0x45;
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

/// Hand-built character-mode tokenizer: single-scalar base tokens plus the
/// given merges (each merge result becomes a vocab entry).
inline tokscope::Tokenizer toy_tokenizer(const std::vector<std::string>& base,
                                         const std::vector<std::pair<std::string, std::string>>& merges,
                                         const std::vector<std::string>& added = {},
                                         const std::string& name = "toy") {
    std::unordered_map<std::string, tokscope::TokenId> vocab;
    tokscope::TokenId next = 0;
    for (const auto& sym : base) vocab.emplace(sym, next++);
    for (const auto& [l, r] : merges) {
        if (!vocab.count(l + r)) vocab.emplace(l + r, next++);
    }
    return tokscope::Tokenizer(name, false, std::move(vocab), merges, added);
}

}  // namespace testutil
