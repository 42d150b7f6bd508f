#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tokscope/corpus.hpp"
#include "tokscope/error.hpp"
#include "tokscope/segmentation.hpp"
#include "tokscope/tokenizer.hpp"

namespace tokscope::metrics {

/// Corpus-level metrics for one (tokenizer, corpus) pair. The integer counts
/// are the source of truth; the reals are ratios of them, so rounding for
/// display never loses information.
///   fertility        = token_count / word_count      (tokens per word)
///   chars_per_token  = char_count / token_count
///   entropy_bits     = Shannon entropy of the token-type distribution
struct MetricReport {
    std::string tokenizer_name;
    std::string language;
    Domain domain = Domain::Unspecified;
    double fertility = 0.0;
    double entropy_bits = 0.0;
    double chars_per_token = 0.0;
    std::int64_t word_count = 0;
    std::int64_t token_count = 0;
    std::int64_t char_count = 0;
};

struct StrrFailure {
    std::string word;
    std::size_t token_count = 0;
};

/// Single Token Retention Rate over a wordlist: the percentage of entries the
/// tokenizer keeps as exactly one token.
struct StrrReport {
    std::string tokenizer_name;
    std::string language;
    std::size_t n = 0;
    std::size_t retained = 0;
    double strr = 0.0;
    std::vector<StrrFailure> failures;
};

namespace detail {

struct Counts {
    std::int64_t words = 0;
    std::int64_t tokens = 0;
    std::int64_t chars = 0;
    std::map<TokenId, std::int64_t> type_counts;

    void merge(const Counts& other) {
        words += other.words;
        tokens += other.tokens;
        chars += other.chars;
        for (const auto& [id, c] : other.type_counts) type_counts[id] += c;
    }
};

/// Word-form rule for running text: with a byte-level tokenizer the document-
/// initial segment is encoded bare and every later segment carries the leading
/// space, matching how whole-word entries appear in real vocab files. Plain
/// character tokenizers encode every segment bare (their toy vocabs rarely
/// carry a space symbol, and the hand-traced arithmetic stays exact).
inline void count_document(const Tokenizer& tok, const std::string& doc,
                           const SegmentPolicy& policy, Counts& counts) {
    const std::vector<Segment> segments = segment(doc, policy);
    bool first = true;
    for (const Segment& seg : segments) {
        const bool prefix = tok.byte_level() && !first;
        const Encoding enc = tok.encode_word(seg.text, prefix);
        counts.words += 1;
        counts.tokens += static_cast<std::int64_t>(enc.size());
        counts.chars += static_cast<std::int64_t>(seg.char_count);
        for (TokenId id : enc.ids) counts.type_counts[id] += 1;
        first = false;
    }
}

inline Counts count_corpus(const Tokenizer& tok, const Corpus& corpus,
                           const SegmentPolicy& policy, unsigned threads) {
    Counts total;
    if (threads <= 1 || corpus.documents.size() < 2) {
        for (const auto& doc : corpus.documents) count_document(tok, doc, policy, total);
        return total;
    }
    const std::size_t n = corpus.documents.size();
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::vector<Counts> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                // contiguous slice per worker; integer merge keeps the result
                // identical to the serial pass
                const std::size_t lo = n * w / workers;
                const std::size_t hi = n * (w + 1) / workers;
                for (std::size_t i = lo; i < hi; ++i) {
                    count_document(tok, corpus.documents[i], policy, partial[w]);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    for (const auto& p : partial) total.merge(p);
    return total;
}

inline double entropy_bits(const std::map<TokenId, std::int64_t>& type_counts, std::int64_t total) {
    // -sum p log2 p over types, maximum likelihood, in ascending id order so
    // the floating-point sum is reproducible
    double h = 0.0;
    for (const auto& [id, count] : type_counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace detail

/// Computes fertility, subword entropy and characters-per-token in one pass.
inline MetricReport evaluate_corpus(const Tokenizer& tok, const Corpus& corpus,
                                    const SegmentPolicy& policy, unsigned threads = 1) {
    if (corpus.documents.empty()) {
        throw Error("evaluate: corpus \"" + corpus.name + "\" has no documents");
    }
    const detail::Counts counts = detail::count_corpus(tok, corpus, policy, threads);
    if (counts.words == 0) {
        throw Error("evaluate: corpus \"" + corpus.name + "\" has no segments under policy " +
                    segment_mode_name(policy.mode));
    }
    MetricReport report;
    report.tokenizer_name = tok.name();
    report.language = corpus.language;
    report.domain = corpus.domain;
    report.word_count = counts.words;
    report.token_count = counts.tokens;
    report.char_count = counts.chars;
    report.fertility = static_cast<double>(counts.tokens) / static_cast<double>(counts.words);
    report.chars_per_token = static_cast<double>(counts.chars) / static_cast<double>(counts.tokens);
    report.entropy_bits = detail::entropy_bits(counts.type_counts, counts.tokens);
    return report;
}

inline double fertility(const Tokenizer& tok, const Corpus& corpus, const SegmentPolicy& policy) {
    return evaluate_corpus(tok, corpus, policy).fertility;
}

inline double subword_entropy(const Tokenizer& tok, const Corpus& corpus, const SegmentPolicy& policy) {
    return evaluate_corpus(tok, corpus, policy).entropy_bits;
}

inline double chars_per_token(const Tokenizer& tok, const Corpus& corpus, const SegmentPolicy& policy) {
    return evaluate_corpus(tok, corpus, policy).chars_per_token;
}

/// STRR(T;W) = 100/n * |{w in W : |T(w)| = 1}| under the given word form.
/// Failures list every non-retained word, longest encodings first.
inline StrrReport strr(const Tokenizer& tok, const WordList& list, WordForm form = WordForm::Bare) {
    if (list.words.empty()) throw Error("strr: empty wordlist for language \"" + list.language + "\"");
    StrrReport report;
    report.tokenizer_name = tok.name();
    report.language = list.language;
    report.n = list.words.size();
    for (const auto& word : list.words) {
        const std::size_t len = tok.encoding_length(word, form);
        if (len == 1) {
            ++report.retained;
        } else {
            report.failures.push_back({word, len});
        }
    }
    report.strr = static_cast<double>(report.retained) / static_cast<double>(report.n) * 100.0;
    std::sort(report.failures.begin(), report.failures.end(), [](const StrrFailure& a, const StrrFailure& b) {
        if (a.token_count != b.token_count) return a.token_count > b.token_count;
        return a.word < b.word;
    });
    return report;
}

// ---------------------------------------------------------------------------
// Cross-product comparison: every (tokenizer, dataset) cell is computed
// independently and failures are captured per cell.
// ---------------------------------------------------------------------------

struct MetricCell {
    std::string tokenizer_name;
    std::string corpus_name;
    std::optional<MetricReport> report;
    std::string error;
};

struct StrrCell {
    std::string tokenizer_name;
    std::string list_name;
    std::optional<StrrReport> report;
    std::string error;
};

inline std::vector<MetricCell> compare_metrics(const std::vector<const Tokenizer*>& tokenizers,
                                               const std::vector<const Corpus*>& corpora,
                                               const SegmentPolicy& policy, unsigned threads = 1) {
    std::vector<MetricCell> cells;
    cells.reserve(tokenizers.size() * corpora.size());
    for (const Corpus* corpus : corpora) {
        for (const Tokenizer* tok : tokenizers) {
            MetricCell cell;
            cell.tokenizer_name = tok->name();
            cell.corpus_name = corpus->name;
            try {
                cell.report = evaluate_corpus(*tok, *corpus, policy, threads);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

inline std::vector<StrrCell> compare_strr(const std::vector<const Tokenizer*>& tokenizers,
                                          const std::vector<const WordList*>& lists,
                                          WordForm form = WordForm::Bare) {
    std::vector<StrrCell> cells;
    cells.reserve(tokenizers.size() * lists.size());
    for (const WordList* list : lists) {
        for (const Tokenizer* tok : tokenizers) {
            StrrCell cell;
            cell.tokenizer_name = tok->name();
            cell.list_name = list->language;
            try {
                cell.report = strr(*tok, *list, form);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace tokscope::metrics
