#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tokscope/error.hpp"
#include "tokscope/unicode.hpp"

namespace tokscope {

enum class ScriptTag { Spaced, Han, Mixed };

inline const char* script_name(ScriptTag tag) {
    switch (tag) {
        case ScriptTag::Spaced: return "spaced";
        case ScriptTag::Han: return "han";
        case ScriptTag::Mixed: return "mixed";
    }
    return "?";
}

/// Han if every letter is Han, spaced if none is (including letterless text),
/// mixed otherwise.
inline ScriptTag classify_script(std::string_view text) {
    std::size_t han = 0, other = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = unicode::decode_scalar(text, pos);
        if (!unicode::is_letter(cp)) continue;
        if (unicode::is_han(cp)) {
            ++han;
        } else {
            ++other;
        }
    }
    if (han == 0) return ScriptTag::Spaced;
    return other == 0 ? ScriptTag::Han : ScriptTag::Mixed;
}

/// Wordlist for greedy longest-match segmentation of Han spans.
class HanDictionary {
public:
    explicit HanDictionary(const std::vector<std::string>& words) {
        for (const auto& w : words) {
            if (w.empty()) continue;
            const std::size_t len = unicode::scalar_count(w);
            max_scalars_ = std::max(max_scalars_, len);
            words_.insert(w);
        }
    }

    bool contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }
    std::size_t max_scalars() const { return max_scalars_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

private:
    std::unordered_set<std::string> words_;
    std::size_t max_scalars_ = 0;
};

enum class SegmentMode { UnicodeWords, Whitespace, HanPerChar, HanGreedyDict };

inline const char* segment_mode_name(SegmentMode mode) {
    switch (mode) {
        case SegmentMode::UnicodeWords: return "unicode-words";
        case SegmentMode::Whitespace: return "whitespace";
        case SegmentMode::HanPerChar: return "han-per-char";
        case SegmentMode::HanGreedyDict: return "han-greedy-dict";
    }
    return "?";
}

struct SegmentPolicy {
    SegmentMode mode = SegmentMode::UnicodeWords;
    std::shared_ptr<const HanDictionary> dictionary;

    static SegmentPolicy unicode_words() { return {SegmentMode::UnicodeWords, nullptr}; }
    static SegmentPolicy whitespace() { return {SegmentMode::Whitespace, nullptr}; }
    static SegmentPolicy han_per_char() { return {SegmentMode::HanPerChar, nullptr}; }
    static SegmentPolicy han_greedy(std::shared_ptr<const HanDictionary> dict) {
        return {SegmentMode::HanGreedyDict, std::move(dict)};
    }
};

/// One word-like unit of a document. char_count is the number of Unicode
/// scalar values; inter-word whitespace never reaches a Segment.
struct Segment {
    std::string text;
    std::size_t char_count = 0;
    ScriptTag script = ScriptTag::Spaced;
};

namespace detail {

inline Segment make_segment(std::string text) {
    Segment seg;
    seg.char_count = unicode::scalar_count(text);
    seg.script = classify_script(text);
    seg.text = std::move(text);
    return seg;
}

struct ScalarRun {
    std::vector<char32_t> scalars;
    std::vector<std::size_t> offsets;  // byte offset of each scalar + end sentinel
};

inline ScalarRun scan(std::string_view text) {
    ScalarRun run;
    std::size_t pos = 0;
    while (pos < text.size()) {
        run.offsets.push_back(pos);
        run.scalars.push_back(unicode::decode_scalar(text, pos));
    }
    run.offsets.push_back(text.size());
    return run;
}

inline bool is_word_char(char32_t cp) {
    return unicode::is_letter(cp) || unicode::is_digit(cp);
}

inline bool is_mid_letter(char32_t cp) {
    return cp == 0x27 || cp == 0x2019;  // ' and ’
}

// Maximal runs holding at least one letter or digit; marks extend a run,
// apostrophes survive between letters. Punctuation-only spans are dropped.
inline void unicode_words_into(std::string_view text, std::vector<Segment>& out) {
    const ScalarRun run = scan(text);
    const std::size_t n = run.scalars.size();
    std::size_t i = 0;
    while (i < n) {
        if (!is_word_char(run.scalars[i])) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n) {
            const char32_t cp = run.scalars[j];
            if (is_word_char(cp) || unicode::is_mark(cp)) {
                ++j;
            } else if (is_mid_letter(cp) && unicode::is_letter(run.scalars[j - 1]) &&
                       j + 1 < n && unicode::is_letter(run.scalars[j + 1])) {
                j += 2;
            } else {
                break;
            }
        }
        out.push_back(make_segment(std::string(text.substr(run.offsets[i], run.offsets[j] - run.offsets[i]))));
        i = j;
    }
}

inline void whitespace_words_into(std::string_view text, std::vector<Segment>& out) {
    const ScalarRun run = scan(text);
    const std::size_t n = run.scalars.size();
    std::size_t i = 0;
    while (i < n) {
        if (unicode::is_whitespace(run.scalars[i])) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n && !unicode::is_whitespace(run.scalars[j])) ++j;
        out.push_back(make_segment(std::string(text.substr(run.offsets[i], run.offsets[j] - run.offsets[i]))));
        i = j;
    }
}

inline void han_span_per_char_into(std::string_view span, std::vector<Segment>& out) {
    std::size_t pos = 0;
    while (pos < span.size()) {
        const std::size_t start = pos;
        unicode::decode_scalar(span, pos);
        out.push_back(make_segment(std::string(span.substr(start, pos - start))));
    }
}

inline void han_span_greedy_into(std::string_view span, const HanDictionary& dict,
                                 std::vector<Segment>& out) {
    const ScalarRun run = scan(span);
    const std::size_t n = run.scalars.size();
    std::size_t i = 0;
    while (i < n) {
        const std::size_t max_len = std::min(dict.max_scalars(), n - i);
        std::size_t taken = 1;
        for (std::size_t len = max_len; len >= 2; --len) {
            const std::string_view cand = span.substr(run.offsets[i], run.offsets[i + len] - run.offsets[i]);
            if (dict.contains(cand)) {
                taken = len;
                break;
            }
        }
        out.push_back(make_segment(std::string(span.substr(run.offsets[i], run.offsets[i + taken] - run.offsets[i]))));
        i += taken;
    }
}

// Routes Han spans through `han_handler` and everything else through
// unicode-words.
template <typename HanHandler>
void split_by_han_spans(std::string_view text, HanHandler&& han_handler, std::vector<Segment>& out) {
    const ScalarRun run = scan(text);
    const std::size_t n = run.scalars.size();
    std::size_t i = 0;
    while (i < n) {
        const bool han = unicode::is_han(run.scalars[i]);
        std::size_t j = i + 1;
        while (j < n && unicode::is_han(run.scalars[j]) == han) ++j;
        const std::string_view span = text.substr(run.offsets[i], run.offsets[j] - run.offsets[i]);
        if (han) {
            han_handler(span, out);
        } else {
            unicode_words_into(span, out);
        }
        i = j;
    }
}

}  // namespace detail

/// Splits a document into the word-like units all corpus metrics are defined
/// over. Deterministic and total on valid UTF-8.
inline std::vector<Segment> segment(std::string_view text, const SegmentPolicy& policy) {
    std::vector<Segment> out;
    switch (policy.mode) {
        case SegmentMode::UnicodeWords:
            detail::unicode_words_into(text, out);
            break;
        case SegmentMode::Whitespace:
            detail::whitespace_words_into(text, out);
            break;
        case SegmentMode::HanPerChar:
            detail::split_by_han_spans(text, detail::han_span_per_char_into, out);
            break;
        case SegmentMode::HanGreedyDict: {
            if (!policy.dictionary || policy.dictionary->empty()) {
                throw Error("segment: han-greedy-dict requires a non-empty dictionary");
            }
            const HanDictionary& dict = *policy.dictionary;
            detail::split_by_han_spans(
                text,
                [&dict](std::string_view span, std::vector<Segment>& sink) {
                    detail::han_span_greedy_into(span, dict, sink);
                },
                out);
            break;
        }
    }
    return out;
}

}  // namespace tokscope
