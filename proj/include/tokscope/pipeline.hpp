#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tokscope/corpus.hpp"
#include "tokscope/error.hpp"
#include "tokscope/metrics.hpp"
#include "tokscope/segmentation.hpp"
#include "tokscope/tokenizer.hpp"

namespace tokscope::pipeline {

/// Cumulative token coverage by word-frequency rank. ranked_words is sorted
/// by descending corpus frequency (ties broken lexicographically);
/// cumulative_coverage[k] is the share of word occurrences covered by the
/// top k+1 words, ending at 1.0.
struct CoverageCurve {
    std::vector<std::string> ranked_words;
    std::vector<std::int64_t> counts;
    std::vector<double> cumulative_coverage;
    std::int64_t total_occurrences = 0;
};

struct CoreVocabulary {
    CoverageCurve curve;
    std::vector<std::string> words;      // minimal ranked prefix reaching the target
    double achieved_coverage = 0.0;
    double target_coverage = 0.0;
};

/// Ranks words by corpus frequency and returns the smallest prefix whose
/// cumulative coverage reaches the target.
inline CoreVocabulary core_vocabulary(const Corpus& corpus, const SegmentPolicy& policy,
                                      double target_coverage) {
    if (!(target_coverage > 0.0 && target_coverage <= 1.0)) {
        throw Error("core_vocabulary: target coverage must be in (0, 1]");
    }
    if (corpus.documents.empty()) {
        throw Error("core_vocabulary: corpus \"" + corpus.name + "\" has no documents");
    }
    std::unordered_map<std::string, std::int64_t> freq;
    std::int64_t total = 0;
    for (const auto& doc : corpus.documents) {
        for (const Segment& seg : segment(doc, policy)) {
            ++freq[seg.text];
            ++total;
        }
    }
    if (total == 0) {
        throw Error("core_vocabulary: corpus \"" + corpus.name + "\" has no segments under policy " +
                    segment_mode_name(policy.mode));
    }

    std::vector<std::pair<std::string, std::int64_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    CoreVocabulary core;
    core.target_coverage = target_coverage;
    core.curve.total_occurrences = total;
    core.curve.ranked_words.reserve(ranked.size());
    core.curve.counts.reserve(ranked.size());
    core.curve.cumulative_coverage.reserve(ranked.size());
    std::int64_t cumulative = 0;
    std::size_t cut = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        cumulative += ranked[i].second;
        const double share = static_cast<double>(cumulative) / static_cast<double>(total);
        core.curve.ranked_words.push_back(ranked[i].first);
        core.curve.counts.push_back(ranked[i].second);
        core.curve.cumulative_coverage.push_back(share);
        if (cut == 0 && share >= target_coverage) cut = i + 1;
    }
    if (cut == 0) cut = ranked.size();  // float slack at target 1.0
    core.words.assign(core.curve.ranked_words.begin(),
                      core.curve.ranked_words.begin() + static_cast<std::ptrdiff_t>(cut));
    core.achieved_coverage = core.curve.cumulative_coverage[cut - 1];
    return core;
}

/// Record of one vocabulary-injection run. candidates are the words that
/// were not single tokens under the policy; injected is the subset added as
/// added-tokens. Words containing whitespace cannot survive pretokenization:
/// they are rejected up front (reason attached) and excluded from the
/// candidate and STRR accounting.
struct InjectionPlan {
    std::vector<std::string> candidates;
    std::vector<std::string> injected;
    std::vector<std::pair<std::string, std::string>> rejected;  // word, reason
    double strr_before = 0.0;
    double strr_after = 0.0;
};

struct InjectionResult {
    Tokenizer tokenizer;
    InjectionPlan plan;
};

namespace detail {

inline bool contains_whitespace(const std::string& word) {
    std::size_t pos = 0;
    while (pos < word.size()) {
        if (unicode::is_whitespace(unicode::decode_scalar(word, pos))) return true;
    }
    return false;
}

}  // namespace detail

/// Adds every word that is not already a single token under `form` to the
/// tokenizer's added tokens. The input tokenizer is untouched; the plan
/// records STRR over `words` before and after.
inline InjectionResult inject(const Tokenizer& tok, const std::vector<std::string>& words,
                              WordForm form = WordForm::Bare) {
    if (words.empty()) throw Error("inject: empty word set");
    std::vector<std::string> unique;
    {
        std::set<std::string> seen;
        for (const auto& w : words) {
            if (w.empty()) throw Error("inject: empty word in input");
            if (seen.insert(w).second) unique.push_back(w);
        }
    }

    InjectionPlan plan;
    std::vector<std::string> encodable;
    std::vector<std::string> to_add;
    for (const auto& word : unique) {
        if (detail::contains_whitespace(word)) {
            plan.rejected.emplace_back(word, "contains whitespace and cannot survive pretokenization");
            continue;
        }
        encodable.push_back(word);
        if (tok.is_single_token(word, form)) continue;
        plan.candidates.push_back(word);
        to_add.push_back(word);
    }

    Tokenizer updated = tok.with_added_tokens(to_add);
    plan.injected = std::move(to_add);
    if (!encodable.empty()) {
        WordList list;
        list.language = "injection";
        list.words = std::move(encodable);
        plan.strr_before = metrics::strr(tok, list, form).strr;
        plan.strr_after = metrics::strr(updated, list, form).strr;
    }
    return InjectionResult{std::move(updated), std::move(plan)};
}

struct TrainResult {
    Tokenizer tokenizer;
    bool target_reached = false;
    std::size_t merge_count = 0;
};

/// Minimal deterministic BPE trainer: repeatedly merges the most frequent
/// adjacent symbol pair inside segments (ties broken lexicographically on the
/// pair) until the vocab target is reached or no pair occurs twice. Byte-level
/// training starts from the full 256-symbol alphabet so any input stays
/// encodable; character mode starts from the scalars observed in the corpus.
inline TrainResult train_bpe(const Corpus& corpus, const SegmentPolicy& policy,
                             std::size_t vocab_size_target, bool byte_level = true,
                             const std::string& name = "trained-bpe") {
    if (corpus.documents.empty()) {
        throw Error("train_bpe: corpus \"" + corpus.name + "\" has no documents");
    }

    // unique segments with occurrence counts, in deterministic order
    std::map<std::string, std::int64_t> seg_freq;
    for (const auto& doc : corpus.documents) {
        for (const Segment& seg : segment(doc, policy)) ++seg_freq[seg.text];
    }
    if (seg_freq.empty()) {
        throw Error("train_bpe: corpus \"" + corpus.name + "\" has no segments under policy " +
                    segment_mode_name(policy.mode));
    }

    std::unordered_map<std::string, TokenId> vocab;
    if (byte_level) {
        for (int b = 0; b < 256; ++b) {
            vocab.emplace(byte_level::byte_symbol(static_cast<std::uint8_t>(b)), b);
        }
    } else {
        std::set<std::string> alphabet;
        for (const auto& [text, count] : seg_freq) {
            std::size_t pos = 0;
            while (pos < text.size()) {
                const std::size_t start = pos;
                unicode::decode_scalar(text, pos);
                alphabet.insert(text.substr(start, pos - start));
            }
        }
        TokenId next = 0;
        for (const auto& sym : alphabet) vocab.emplace(sym, next++);
    }
    if (vocab_size_target < vocab.size()) {
        throw Error("train_bpe: vocab size target " + std::to_string(vocab_size_target) +
                    " is below the base alphabet size " + std::to_string(vocab.size()));
    }

    struct Word {
        std::vector<std::string> symbols;
        std::int64_t count;
    };
    std::vector<Word> words;
    words.reserve(seg_freq.size());
    for (const auto& [text, count] : seg_freq) {
        Word w;
        w.count = count;
        if (byte_level) {
            w.symbols = byte_level::to_symbols(text);
        } else {
            std::size_t pos = 0;
            while (pos < text.size()) {
                const std::size_t start = pos;
                unicode::decode_scalar(text, pos);
                w.symbols.push_back(text.substr(start, pos - start));
            }
        }
        words.push_back(std::move(w));
    }

    std::vector<std::pair<std::string, std::string>> merges;
    TokenId next_id = static_cast<TokenId>(vocab.size());
    while (vocab.size() < vocab_size_target) {
        // count all adjacent pairs (overlaps included)
        std::map<std::pair<std::string, std::string>, std::int64_t> pair_counts;
        for (const Word& w : words) {
            for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
                pair_counts[{w.symbols[i], w.symbols[i + 1]}] += w.count;
            }
        }
        const std::pair<std::string, std::string>* best = nullptr;
        std::int64_t best_count = 0;
        for (const auto& [pair, count] : pair_counts) {
            if (count > best_count) {  // map order makes ties resolve to the smaller pair
                best = &pair;
                best_count = count;
            }
        }
        if (!best || best_count < 2) break;

        const std::string left = best->first;
        const std::string right = best->second;
        const std::string joined = left + right;
        merges.emplace_back(left, right);
        if (!vocab.count(joined)) vocab.emplace(joined, next_id++);

        for (Word& w : words) {
            std::vector<std::string> next;
            next.reserve(w.symbols.size());
            std::size_t i = 0;
            while (i < w.symbols.size()) {
                if (i + 1 < w.symbols.size() && w.symbols[i] == left && w.symbols[i + 1] == right) {
                    next.push_back(joined);
                    i += 2;
                } else {
                    next.push_back(std::move(w.symbols[i]));
                    i += 1;
                }
            }
            w.symbols = std::move(next);
        }
    }

    const bool reached = vocab.size() >= vocab_size_target;
    const std::size_t merge_count = merges.size();
    return TrainResult{Tokenizer(name, byte_level, std::move(vocab), std::move(merges), {}),
                       reached, merge_count};
}

}  // namespace tokscope::pipeline
