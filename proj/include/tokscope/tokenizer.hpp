#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tokscope/byte_level.hpp"
#include "tokscope/error.hpp"
#include "tokscope/unicode.hpp"

namespace tokscope {

using TokenId = int;

/// One encoded word or segment. Token ids and token strings are index-aligned;
/// `source` is the exact text that was encoded (including the leading space
/// when one was prepended), so decoding the ids always reproduces `source`.
struct Encoding {
    std::vector<TokenId> ids;
    std::vector<std::string> tokens;
    std::string source;

    std::size_t size() const { return ids.size(); }
};

/// Which surface form of a word to test or encode.
///   Bare          — the word exactly as written.
///   SpacePrefixed — with one leading space, the form whole-word vocab
///                   entries usually carry in byte-level tokenizers.
///   Either        — single-token if at least one of the two forms is.
enum class WordForm { Bare, SpacePrefixed, Either };

inline const char* word_form_name(WordForm form) {
    switch (form) {
        case WordForm::Bare: return "bare";
        case WordForm::SpacePrefixed: return "space-prefixed";
        case WordForm::Either: return "either";
    }
    return "?";
}

/// Immutable byte-level BPE encoder/decoder with added-token support.
///
/// Construction validates the full invariant set: ids unique and
/// non-negative, every merge side present in the vocab or in the base
/// alphabet, every merge concatenation present in the vocab. All operations
/// are const and safe to call from any number of threads.
class Tokenizer {
public:
    Tokenizer(std::string name, bool byte_level,
              std::unordered_map<std::string, TokenId> vocab,
              std::vector<std::pair<std::string, std::string>> merges,
              std::vector<std::string> added_tokens)
        : name_(std::move(name)),
          byte_level_(byte_level),
          vocab_(std::move(vocab)),
          merges_(std::move(merges)),
          added_tokens_(std::move(added_tokens)) {
        validate_and_index();
    }

    const std::string& name() const { return name_; }
    bool byte_level() const { return byte_level_; }
    const std::unordered_map<std::string, TokenId>& vocab() const { return vocab_; }
    const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }
    const std::vector<std::string>& added_tokens() const { return added_tokens_; }

    /// |vocab| plus added tokens that are not already vocab entries.
    std::size_t vocab_size() const { return vocab_.size() + fresh_added_count_; }

    TokenId max_id() const { return max_id_; }

    bool is_added_token(std::string_view word) const {
        return added_ids_.count(std::string(word)) > 0;
    }

    /// Encodes one pretokenized word. An exact added-token match on the whole
    /// word wins before anything else and ignores `space_prefix`; otherwise
    /// the (optionally space-prefixed) text is mapped to base symbols and the
    /// lowest-rank applicable merge is applied, leftmost first, until none
    /// applies.
    Encoding encode_word(std::string_view word, bool space_prefix = false) const {
        if (word.empty()) throw Error("encode_word: empty input");
        std::string raw(word);
        if (auto it = added_ids_.find(raw); it != added_ids_.end()) {
            return Encoding{{it->second}, {raw}, std::move(raw)};
        }
        std::string effective = space_prefix ? " " + raw : std::move(raw);
        std::vector<std::string> symbols = base_symbols(effective);
        apply_merges(symbols);

        Encoding enc;
        enc.ids.reserve(symbols.size());
        for (const auto& sym : symbols) {
            auto it = vocab_.find(sym);
            if (it == vocab_.end()) {
                throw Error("encode_word: token \"" + sym + "\" is absent from the vocab of tokenizer \"" +
                            name_ + "\" (corrupt tokenizer file?)");
            }
            enc.ids.push_back(it->second);
        }
        enc.tokens = std::move(symbols);
        enc.source = std::move(effective);
        return enc;
    }

    /// Batch form of encode_word over segmenter output; order preserved.
    std::vector<Encoding> encode_text(const std::vector<std::string>& segments,
                                      bool space_prefix = false) const {
        std::vector<Encoding> out;
        out.reserve(segments.size());
        for (std::size_t i = 0; i < segments.size(); ++i) {
            try {
                out.push_back(encode_word(segments[i], space_prefix));
            } catch (const Error& e) {
                throw Error("segment " + std::to_string(i) + ": " + e.what());
            }
        }
        return out;
    }

    /// Inverse of encode_word. Added tokens that are not vocab entries carry
    /// raw text and bypass the byte-level alphabet.
    std::string decode(const std::vector<TokenId>& ids) const {
        std::string out;
        std::string pending;  // alphabet text awaiting byte decoding
        for (TokenId id : ids) {
            if (auto raw = raw_added_.find(id); raw != raw_added_.end()) {
                if (!pending.empty()) {
                    out += byte_level_ ? byte_level::to_bytes(pending) : pending;
                    pending.clear();
                }
                out += raw->second;
                continue;
            }
            auto it = id_to_token_.find(id);
            if (it == id_to_token_.end()) throw Error("decode: unknown token id " + std::to_string(id));
            pending += it->second;
        }
        if (!pending.empty()) out += byte_level_ ? byte_level::to_bytes(pending) : pending;
        return out;
    }

    bool is_single_token(std::string_view word, WordForm form) const {
        switch (form) {
            case WordForm::Bare: return encode_word(word, false).size() == 1;
            case WordForm::SpacePrefixed: return encode_word(word, true).size() == 1;
            case WordForm::Either:
                return encode_word(word, false).size() == 1 || encode_word(word, true).size() == 1;
        }
        return false;
    }

    /// Token count of `word` under a form policy; Either reports the shorter
    /// of the two encodings.
    std::size_t encoding_length(std::string_view word, WordForm form) const {
        switch (form) {
            case WordForm::Bare: return encode_word(word, false).size();
            case WordForm::SpacePrefixed: return encode_word(word, true).size();
            case WordForm::Either: {
                const std::size_t bare = encode_word(word, false).size();
                if (bare == 1) return 1;
                return std::min(bare, encode_word(word, true).size());
            }
        }
        return 0;
    }

    /// Copy of this tokenizer with extra added tokens appended. Ids for fresh
    /// tokens continue sequentially past the current maximum.
    Tokenizer with_added_tokens(const std::vector<std::string>& extra) const {
        std::vector<std::string> added = added_tokens_;
        added.insert(added.end(), extra.begin(), extra.end());
        return Tokenizer(name_, byte_level_, vocab_, merges_, std::move(added));
    }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<std::string, std::string>& p) const {
            const std::size_t h1 = std::hash<std::string>{}(p.first);
            const std::size_t h2 = std::hash<std::string>{}(p.second);
            return h1 ^ (h2 + 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2));
        }
    };

    std::vector<std::string> base_symbols(std::string_view text) const {
        if (byte_level_) return byte_level::to_symbols(text);
        std::vector<std::string> symbols;
        std::size_t pos = 0;
        while (pos < text.size()) {
            const std::size_t start = pos;
            unicode::decode_scalar(text, pos);
            symbols.emplace_back(text.substr(start, pos - start));
        }
        return symbols;
    }

    bool is_base_symbol(const std::string& symbol) const {
        if (byte_level_) return byte_level::is_alphabet_symbol(symbol);
        std::size_t pos = 0;
        try {
            unicode::decode_scalar(symbol, pos);
        } catch (const Error&) {
            return false;
        }
        return pos == symbol.size();
    }

    void apply_merges(std::vector<std::string>& symbols) const {
        constexpr int kNoMerge = std::numeric_limits<int>::max();
        while (symbols.size() > 1) {
            int best_rank = kNoMerge;
            std::size_t best_pos = 0;
            for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
                auto it = merge_rank_.find({symbols[i], symbols[i + 1]});
                if (it != merge_rank_.end() && it->second < best_rank) {
                    best_rank = it->second;
                    best_pos = i;
                }
            }
            if (best_rank == kNoMerge) break;
            symbols[best_pos] += symbols[best_pos + 1];
            symbols.erase(symbols.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
        }
    }

    void validate_and_index() {
        max_id_ = -1;
        id_to_token_.reserve(vocab_.size());
        for (const auto& [token, id] : vocab_) {
            if (token.empty()) throw Error("tokenizer \"" + name_ + "\": empty vocab entry");
            if (id < 0) throw Error("tokenizer \"" + name_ + "\": negative id for token \"" + token + "\"");
            if (!id_to_token_.emplace(id, token).second) {
                throw Error("tokenizer \"" + name_ + "\": duplicate token id " + std::to_string(id));
            }
            if (id > max_id_) max_id_ = id;
        }
        merge_rank_.reserve(merges_.size());
        for (std::size_t rank = 0; rank < merges_.size(); ++rank) {
            const auto& [left, right] = merges_[rank];
            const std::string joined = left + right;
            if (!vocab_.count(left) && !is_base_symbol(left)) {
                throw Error("tokenizer \"" + name_ + "\": merge " + std::to_string(rank) + " left side \"" +
                            left + "\" is neither a vocab entry nor a base symbol");
            }
            if (!vocab_.count(right) && !is_base_symbol(right)) {
                throw Error("tokenizer \"" + name_ + "\": merge " + std::to_string(rank) + " right side \"" +
                            right + "\" is neither a vocab entry nor a base symbol");
            }
            if (!vocab_.count(joined)) {
                throw Error("tokenizer \"" + name_ + "\": merge " + std::to_string(rank) + " result \"" +
                            joined + "\" is absent from the vocab");
            }
            if (!merge_rank_.emplace(std::make_pair(left, right), static_cast<int>(rank)).second) {
                throw Error("tokenizer \"" + name_ + "\": duplicate merge pair at rank " + std::to_string(rank));
            }
        }
        TokenId next = max_id_ + 1;
        for (const auto& token : added_tokens_) {
            if (token.empty()) throw Error("tokenizer \"" + name_ + "\": empty added token");
            TokenId id;
            if (auto it = vocab_.find(token); it != vocab_.end()) {
                id = it->second;
            } else {
                id = next++;
                ++fresh_added_count_;
                raw_added_.emplace(id, token);
            }
            if (!added_ids_.emplace(token, id).second) {
                throw Error("tokenizer \"" + name_ + "\": duplicate added token \"" + token + "\"");
            }
            if (id > max_id_) max_id_ = id;
        }
    }

    std::string name_;
    bool byte_level_;
    std::unordered_map<std::string, TokenId> vocab_;
    std::vector<std::pair<std::string, std::string>> merges_;
    std::vector<std::string> added_tokens_;

    std::unordered_map<TokenId, std::string> id_to_token_;
    std::unordered_map<std::pair<std::string, std::string>, int, PairHash> merge_rank_;
    std::unordered_map<std::string, TokenId> added_ids_;
    std::unordered_map<TokenId, std::string> raw_added_;  // added ids outside the vocab
    std::size_t fresh_added_count_ = 0;
    TokenId max_id_ = -1;
};

}  // namespace tokscope
