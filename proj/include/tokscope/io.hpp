#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tokscope/corpus.hpp"
#include "tokscope/error.hpp"
#include "tokscope/segmentation.hpp"
#include "tokscope/tokenizer.hpp"
#include "tokscope/unicode.hpp"

namespace tokscope::io {

/// What a loader skipped or worked around. Nothing is ever dropped silently.
struct LoadStats {
    std::size_t skipped_lines = 0;
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("read error on \"" + path + "\"");
    return std::move(buf).str();
}

inline std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

inline nlohmann::json parse_json(const std::string& text, const std::string& path) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path + ": malformed JSON: " + e.what());
    }
}

inline void strip_newline(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline void strip_bom(std::string& line) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

inline std::pair<std::string, std::string> split_merge_entry(const std::string& entry,
                                                             const std::string& path, std::size_t rank) {
    const std::size_t sp = entry.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 >= entry.size() ||
        entry.find(' ', sp + 1) != std::string::npos) {
        throw Error(path + ": merge " + std::to_string(rank) +
                    " is not two space-separated symbols: \"" + entry + "\"");
    }
    return {entry.substr(0, sp), entry.substr(sp + 1)};
}

inline std::vector<std::pair<std::string, std::string>> parse_merges(const nlohmann::json& arr,
                                                                     const std::string& path) {
    if (!arr.is_array()) throw Error(path + ": \"merges\" must be an array");
    std::vector<std::pair<std::string, std::string>> merges;
    merges.reserve(arr.size());
    for (std::size_t rank = 0; rank < arr.size(); ++rank) {
        const auto& entry = arr[rank];
        if (entry.is_string()) {
            merges.push_back(split_merge_entry(entry.get<std::string>(), path, rank));
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_string() && entry[1].is_string()) {
            merges.emplace_back(entry[0].get<std::string>(), entry[1].get<std::string>());
        } else {
            throw Error(path + ": merge " + std::to_string(rank) +
                        " must be a \"left right\" string or a two-string array");
        }
    }
    return merges;
}

inline std::unordered_map<std::string, TokenId> parse_vocab(const nlohmann::json& obj,
                                                            const std::string& path) {
    if (!obj.is_object()) throw Error(path + ": \"vocab\" must be an object mapping token to id");
    std::unordered_map<std::string, TokenId> vocab;
    vocab.reserve(obj.size());
    for (const auto& [token, id] : obj.items()) {
        if (!id.is_number_integer()) {
            throw Error(path + ": vocab entry \"" + token + "\" has a non-integer id");
        }
        vocab.emplace(token, id.get<TokenId>());
    }
    return vocab;
}

inline bool mentions_byte_level(const nlohmann::json& node) {
    if (node.is_object()) {
        if (auto it = node.find("type"); it != node.end() && it->is_string() &&
            it->get<std::string>() == "ByteLevel") {
            return true;
        }
        for (const auto& [key, value] : node.items()) {
            if (mentions_byte_level(value)) return true;
        }
    } else if (node.is_array()) {
        for (const auto& value : node) {
            if (mentions_byte_level(value)) return true;
        }
    }
    return false;
}

}  // namespace detail

/// Loads a tokenizer from the native schema
///   {"name", "byte_level", "vocab": {token: id}, "merges": ["l r", ...],
///    "added_tokens": ["...", ...]}
/// or from the common public layout ({"model": {"vocab", "merges"},
/// "added_tokens": [{"content": ...}], "pre_tokenizer": ...}).
inline Tokenizer load_tokenizer(const std::string& path, LoadStats* stats = nullptr) {
    LoadStats local;
    LoadStats& st = stats ? *stats : local;
    const nlohmann::json root = detail::parse_json(detail::read_file(path), path);
    if (!root.is_object()) throw Error(path + ": top level must be a JSON object");

    std::string name = detail::file_stem(path);
    bool byte_level = true;
    std::unordered_map<std::string, TokenId> vocab;
    std::vector<std::pair<std::string, std::string>> merges;
    std::vector<std::string> added;

    if (root.contains("model")) {
        // public layout
        const auto& model = root["model"];
        if (!model.is_object() || !model.contains("vocab") || !model.contains("merges")) {
            throw Error(path + ": \"model\" object lacks vocab/merges");
        }
        vocab = detail::parse_vocab(model["vocab"], path);
        merges = detail::parse_merges(model["merges"], path);
        if (auto it = root.find("added_tokens"); it != root.end() && it->is_array()) {
            for (const auto& entry : *it) {
                if (entry.is_object() && entry.contains("content") && entry["content"].is_string()) {
                    added.push_back(entry["content"].get<std::string>());
                } else if (entry.is_string()) {
                    added.push_back(entry.get<std::string>());
                } else {
                    throw Error(path + ": added_tokens entries must be strings or objects with \"content\"");
                }
            }
        }
        if (!detail::mentions_byte_level(root)) {
            st.warn(path + ": no ByteLevel pre-tokenizer found; assuming byte-level anyway");
        }
    } else {
        static const std::unordered_set<std::string> known = {"name", "byte_level", "vocab", "merges",
                                                              "added_tokens"};
        for (const auto& [key, value] : root.items()) {
            if (!known.count(key)) st.warn(path + ": ignoring unknown field \"" + key + "\"");
        }
        if (!root.contains("vocab")) throw Error(path + ": missing \"vocab\"");
        vocab = detail::parse_vocab(root["vocab"], path);
        merges = root.contains("merges") ? detail::parse_merges(root["merges"], path)
                                         : std::vector<std::pair<std::string, std::string>>{};
        if (auto it = root.find("name"); it != root.end() && it->is_string()) name = it->get<std::string>();
        if (auto it = root.find("byte_level"); it != root.end()) {
            if (!it->is_boolean()) throw Error(path + ": \"byte_level\" must be a boolean");
            byte_level = it->get<bool>();
        }
        if (auto it = root.find("added_tokens"); it != root.end()) {
            if (!it->is_array()) throw Error(path + ": \"added_tokens\" must be an array");
            for (const auto& entry : *it) {
                if (!entry.is_string()) throw Error(path + ": added_tokens entries must be strings");
                added.push_back(entry.get<std::string>());
            }
        }
    }

    try {
        return Tokenizer(std::move(name), byte_level, std::move(vocab), std::move(merges), std::move(added));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

/// Writes the native schema. load_tokenizer(save_tokenizer(t)) reproduces
/// every field exactly. Merge sides containing a literal space are written in
/// the two-string array form the loader also accepts.
inline void save_tokenizer(const Tokenizer& tok, const std::string& path) {
    nlohmann::ordered_json root;
    root["name"] = tok.name();
    root["byte_level"] = tok.byte_level();

    // vocab keys ordered by id so output is stable and diff-friendly
    std::map<TokenId, std::string> by_id;
    for (const auto& [token, id] : tok.vocab()) by_id.emplace(id, token);
    nlohmann::ordered_json vocab = nlohmann::ordered_json::object();
    for (const auto& [id, token] : by_id) vocab[token] = id;
    root["vocab"] = std::move(vocab);

    nlohmann::ordered_json merges = nlohmann::ordered_json::array();
    for (const auto& [left, right] : tok.merges()) {
        if (left.find(' ') != std::string::npos || right.find(' ') != std::string::npos) {
            merges.push_back(nlohmann::ordered_json::array({left, right}));
        } else {
            merges.push_back(left + " " + right);
        }
    }
    root["merges"] = std::move(merges);
    root["added_tokens"] = tok.added_tokens();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write \"" + path + "\"");
    out << root.dump(2) << "\n";
    if (!out) throw Error("write error on \"" + path + "\"");
}

enum class CorpusFormat { Lines, Jsonl };

inline CorpusFormat parse_corpus_format(const std::string& s) {
    if (s == "lines") return CorpusFormat::Lines;
    if (s == "jsonl") return CorpusFormat::Jsonl;
    throw Error("unknown corpus format \"" + s + "\" (expected lines or jsonl)");
}

/// Loads a corpus: `lines` is one document per line, `jsonl` one object per
/// line with a "text" field and optional "language"/"domain" overrides. Blank
/// lines are skipped and counted.
inline Corpus load_corpus(const std::string& path, CorpusFormat format,
                          const std::string& language = "", Domain domain = Domain::Unspecified,
                          LoadStats* stats = nullptr) {
    LoadStats local;
    LoadStats& st = stats ? *stats : local;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");

    Corpus corpus;
    corpus.language = language;
    corpus.domain = domain;
    corpus.name = detail::file_stem(path);

    bool language_overridden = false;
    bool domain_overridden = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_newline(line);
        if (lineno == 1) detail::strip_bom(line);
        if (line.empty()) {
            ++st.skipped_lines;
            continue;
        }
        if (!unicode::is_valid_utf8(line)) {
            throw Error(path + ":" + std::to_string(lineno) + ": invalid UTF-8");
        }
        if (format == CorpusFormat::Lines) {
            corpus.documents.push_back(line);
            continue;
        }
        const nlohmann::json obj = detail::parse_json(line, path + ":" + std::to_string(lineno));
        if (!obj.is_object() || !obj.contains("text") || !obj["text"].is_string()) {
            throw Error(path + ":" + std::to_string(lineno) + ": jsonl line lacks a \"text\" string field");
        }
        corpus.documents.push_back(obj["text"].get<std::string>());
        if (auto it = obj.find("language"); it != obj.end() && it->is_string()) {
            const std::string value = it->get<std::string>();
            if (!language_overridden) {
                corpus.language = value;
                language_overridden = true;
            } else if (corpus.language != value) {
                st.warn(path + ":" + std::to_string(lineno) + ": conflicting language tag \"" + value +
                        "\" ignored (corpus already tagged \"" + corpus.language + "\")");
            }
        }
        if (auto it = obj.find("domain"); it != obj.end() && it->is_string()) {
            const Domain value = parse_domain(it->get<std::string>());
            if (!domain_overridden) {
                corpus.domain = value;
                domain_overridden = true;
            } else if (corpus.domain != value) {
                st.warn(path + ":" + std::to_string(lineno) + ": conflicting domain tag ignored");
            }
        }
    }
    if (in.bad()) throw Error("read error on \"" + path + "\"");
    if (st.skipped_lines > 0) {
        st.warn(path + ": skipped " + std::to_string(st.skipped_lines) + " blank line(s)");
    }
    return corpus;
}

using LoadedWordList = std::variant<WordList, ParallelWordList>;

/// Loads a single-column wordlist or a two-column (tab-separated) parallel
/// list. Entries are NFC-normalized, deduplicated in order (pairwise for
/// parallel lists), and must carry no internal whitespace. `#` lines are
/// comments; a `#lang: xx [yy]` directive names the language tag(s),
/// otherwise the filename stem is used (split on `-` for parallel lists).
inline LoadedWordList load_wordlist(const std::string& path, LoadStats* stats = nullptr) {
    LoadStats local;
    LoadStats& st = stats ? *stats : local;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open \"" + path + "\"");

    std::vector<std::string> langs;
    std::vector<std::pair<std::string, std::string>> rows;  // second empty for single column
    int columns = 0;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_newline(line);
        if (lineno == 1) detail::strip_bom(line);
        if (line.empty()) {
            ++st.skipped_lines;
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind("#lang:", 0) == 0) {
                std::istringstream dir(line.substr(6));
                std::string tag;
                while (dir >> tag) langs.push_back(tag);
            }
            continue;
        }
        if (!unicode::is_valid_utf8(line)) {
            throw Error(path + ":" + std::to_string(lineno) + ": invalid UTF-8");
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() > 2) {
            throw Error(path + ":" + std::to_string(lineno) + ": expected 1 or 2 tab-separated fields, got " +
                        std::to_string(fields.size()));
        }
        const int cols = static_cast<int>(fields.size());
        if (columns == 0) {
            columns = cols;
        } else if (columns != cols) {
            throw Error(path + ":" + std::to_string(lineno) + ": mixed column counts (" +
                        std::to_string(cols) + " here, " + std::to_string(columns) + " before)");
        }
        for (auto& field : fields) {
            field = unicode::to_nfc(field);
            if (field.empty()) {
                throw Error(path + ":" + std::to_string(lineno) + ": empty wordlist entry");
            }
            std::size_t pos = 0;
            while (pos < field.size()) {
                if (unicode::is_whitespace(unicode::decode_scalar(field, pos))) {
                    throw Error(path + ":" + std::to_string(lineno) +
                                ": wordlist entry contains whitespace: \"" + field + "\"");
                }
            }
        }
        rows.emplace_back(std::move(fields[0]), cols == 2 ? std::move(fields[1]) : std::string());
    }
    if (in.bad()) throw Error("read error on \"" + path + "\"");
    if (rows.empty()) throw Error(path + ": wordlist has no entries");

    // default language tags from the filename
    const std::string stem = detail::file_stem(path);
    if (columns == 1) {
        WordList list;
        list.language = langs.empty() ? stem : langs[0];
        std::unordered_set<std::string> seen;
        for (auto& [word, unused] : rows) {
            if (seen.insert(word).second) list.words.push_back(std::move(word));
        }
        if (rows.size() != list.words.size()) {
            st.warn(path + ": removed " + std::to_string(rows.size() - list.words.size()) +
                    " duplicate entr(ies)");
        }
        return list;
    }

    ParallelWordList parallel;
    if (langs.size() >= 2) {
        parallel.source.language = langs[0];
        parallel.target.language = langs[1];
    } else {
        const std::size_t dash = stem.find_first_of("-_");
        if (dash != std::string::npos && dash > 0 && dash + 1 < stem.size()) {
            parallel.source.language = stem.substr(0, dash);
            parallel.target.language = stem.substr(dash + 1);
        } else {
            parallel.source.language = "src";
            parallel.target.language = "tgt";
        }
    }
    std::unordered_set<std::string> seen;
    for (auto& [src, tgt] : rows) {
        if (seen.insert(src + "\t" + tgt).second) {
            parallel.source.words.push_back(std::move(src));
            parallel.target.words.push_back(std::move(tgt));
        }
    }
    if (rows.size() != parallel.size()) {
        st.warn(path + ": removed " + std::to_string(rows.size() - parallel.size()) +
                " duplicate pair(s)");
    }
    return parallel;
}

/// Dictionary helper for the Han greedy segmenter: accepts a single-column
/// wordlist file.
inline std::shared_ptr<const HanDictionary> load_dictionary(const std::string& path,
                                                            LoadStats* stats = nullptr) {
    const LoadedWordList loaded = load_wordlist(path, stats);
    if (const auto* single = std::get_if<WordList>(&loaded)) {
        return std::make_shared<HanDictionary>(single->words);
    }
    throw Error(path + ": a segmentation dictionary must be a single-column wordlist");
}

}  // namespace tokscope::io
