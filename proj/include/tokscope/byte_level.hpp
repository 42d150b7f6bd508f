#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tokscope/error.hpp"
#include "tokscope/unicode.hpp"

namespace tokscope::byte_level {

// Reversible byte <-> codepoint alphabet: printable bytes map to themselves,
// the rest are relocated to U+0100.. so every byte has a visible stand-in.
// This is the alphabet GPT-2-style vocab files are written in.

namespace detail {

inline bool is_printable_byte(int b) {
    return (b >= 33 && b <= 126) || (b >= 161 && b <= 172) || (b >= 174 && b <= 255);
}

struct Alphabet {
    std::array<char32_t, 256> byte_to_cp{};
    std::unordered_map<char32_t, std::uint8_t> cp_to_byte;

    Alphabet() {
        int next = 0;
        for (int b = 0; b < 256; ++b) {
            const char32_t cp = is_printable_byte(b) ? static_cast<char32_t>(b)
                                                     : static_cast<char32_t>(256 + next++);
            byte_to_cp[b] = cp;
            cp_to_byte.emplace(cp, static_cast<std::uint8_t>(b));
        }
    }
};

inline const Alphabet& alphabet() {
    static const Alphabet instance;
    return instance;
}

}  // namespace detail

/// The printable stand-in for one byte, as a UTF-8 string.
inline std::string byte_symbol(std::uint8_t b) {
    return unicode::encode_scalar(detail::alphabet().byte_to_cp[b]);
}

inline bool is_alphabet_symbol(std::string_view symbol) {
    std::size_t pos = 0;
    char32_t cp;
    try {
        cp = unicode::decode_scalar(symbol, pos);
    } catch (const Error&) {
        return false;
    }
    return pos == symbol.size() && detail::alphabet().cp_to_byte.count(cp) > 0;
}

/// Maps raw text to one alphabet symbol per byte.
inline std::vector<std::string> to_symbols(std::string_view text) {
    std::vector<std::string> symbols;
    symbols.reserve(text.size());
    for (unsigned char b : text) symbols.push_back(byte_symbol(b));
    return symbols;
}

/// Inverse mapping: alphabet text back to raw bytes. Throws when a scalar is
/// not part of the alphabet (token string from a foreign or corrupt vocab).
inline std::string to_bytes(std::string_view alphabet_text) {
    const auto& map = detail::alphabet().cp_to_byte;
    std::string out;
    out.reserve(alphabet_text.size());
    std::size_t pos = 0;
    while (pos < alphabet_text.size()) {
        const char32_t cp = unicode::decode_scalar(alphabet_text, pos);
        auto it = map.find(cp);
        if (it == map.end()) {
            throw Error("byte-level decode: scalar U+" + std::to_string(static_cast<std::uint32_t>(cp)) +
                        " is not in the byte alphabet");
        }
        out.push_back(static_cast<char>(it->second));
    }
    return out;
}

}  // namespace tokscope::byte_level
