#pragma once

#include <string>
#include <vector>

#include "tokscope/error.hpp"

namespace tokscope {

enum class Domain { Formal, Informal, Unspecified };

inline const char* domain_name(Domain d) {
    switch (d) {
        case Domain::Formal: return "formal";
        case Domain::Informal: return "informal";
        case Domain::Unspecified: return "unspecified";
    }
    return "?";
}

inline Domain parse_domain(const std::string& s) {
    if (s == "formal") return Domain::Formal;
    if (s == "informal") return Domain::Informal;
    if (s == "unspecified" || s.empty()) return Domain::Unspecified;
    throw Error("unknown domain \"" + s + "\" (expected formal, informal or unspecified)");
}

/// A set of documents sharing a language and domain tag.
struct Corpus {
    std::vector<std::string> documents;
    std::string language;
    Domain domain = Domain::Unspecified;
    std::string name;
};

/// Ordered, deduplicated reference words for one language.
struct WordList {
    std::string language;
    std::vector<std::string> words;
};

/// Two index-aligned wordlists (translation pairs).
struct ParallelWordList {
    WordList source;
    WordList target;

    std::size_t size() const { return source.words.size(); }
    std::pair<std::string, std::string> pair(std::size_t i) const {
        return {source.words[i], target.words[i]};
    }
};

}  // namespace tokscope
