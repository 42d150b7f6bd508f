#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tokscope/error.hpp"
#include "tokscope/unicode_tables.hpp"

namespace tokscope::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one UTF-8 scalar starting at `pos`. Advances `pos` past the
/// sequence. Throws on malformed input (truncated, overlong, surrogate).
inline char32_t decode_scalar(std::string_view text, std::size_t& pos) {
    if (pos >= text.size()) throw Error("utf-8: read past end of input");
    const auto byte = [&](std::size_t i) -> std::uint8_t {
        return static_cast<std::uint8_t>(text[i]);
    };
    const std::uint8_t b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        throw Error("utf-8: invalid lead byte at offset " + std::to_string(pos));
    }
    if (pos + len > text.size()) throw Error("utf-8: truncated sequence at offset " + std::to_string(pos));
    for (int i = 1; i < len; ++i) {
        const std::uint8_t b = byte(pos + i);
        if ((b & 0xC0) != 0x80) throw Error("utf-8: bad continuation byte at offset " + std::to_string(pos + i));
        cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinByLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        throw Error("utf-8: invalid scalar at offset " + std::to_string(pos));
    }
    pos += len;
    return cp;
}

inline void append_scalar(std::string& out, char32_t cp) {
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

inline std::string encode_scalar(char32_t cp) {
    std::string out;
    append_scalar(out, cp);
    return out;
}

inline std::vector<char32_t> to_scalars(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) out.push_back(decode_scalar(text, pos));
    return out;
}

inline std::string from_scalars(const std::vector<char32_t>& scalars) {
    std::string out;
    out.reserve(scalars.size());
    for (char32_t cp : scalars) append_scalar(out, cp);
    return out;
}

/// Number of Unicode scalar values in a valid UTF-8 string.
inline std::size_t scalar_count(std::string_view text) {
    std::size_t n = 0, pos = 0;
    while (pos < text.size()) {
        decode_scalar(text, pos);
        ++n;
    }
    return n;
}

inline bool is_valid_utf8(std::string_view text) noexcept {
    std::size_t pos = 0;
    try {
        while (pos < text.size()) decode_scalar(text, pos);
    } catch (const Error&) {
        return false;
    }
    return true;
}

namespace detail {

template <std::size_t N>
bool in_ranges(const tokscope::detail::CodepointRange (&table)[N], char32_t cp) {
    auto it = std::upper_bound(std::begin(table), std::end(table), cp,
                               [](char32_t v, const tokscope::detail::CodepointRange& r) { return v < r.lo; });
    if (it == std::begin(table)) return false;
    --it;
    return cp <= it->hi;
}

}  // namespace detail

inline bool is_letter(char32_t cp) { return detail::in_ranges(tokscope::detail::kLetterRanges, cp); }
inline bool is_digit(char32_t cp) { return detail::in_ranges(tokscope::detail::kDigitRanges, cp); }
inline bool is_mark(char32_t cp) { return detail::in_ranges(tokscope::detail::kMarkRanges, cp); }

/// Unicode White_Space property.
inline bool is_whitespace(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

/// Han script, covering the unified ideograph blocks plus the compatibility
/// ideographs and the iteration/zero marks used in running Chinese text.
inline bool is_han(char32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) ||     // CJK Unified Ideographs
           (cp >= 0x3400 && cp <= 0x4DBF) ||     // Extension A
           (cp >= 0x20000 && cp <= 0x2A6DF) ||   // Extension B
           (cp >= 0x2A700 && cp <= 0x2EBEF) ||   // Extensions C-F
           (cp >= 0x30000 && cp <= 0x3134A) ||   // Extension G
           (cp >= 0xF900 && cp <= 0xFAD9) ||     // Compatibility Ideographs
           (cp >= 0x2F800 && cp <= 0x2FA1D) ||   // Compatibility Supplement
           cp == 0x3005 || cp == 0x3007 ||       // 々 〇
           (cp >= 0x3021 && cp <= 0x3029);       // Suzhou numerals
}

// ---------------------------------------------------------------------------
// NFC normalization. Decompose (NFD) -> canonical reorder -> compose, with
// Hangul syllables handled algorithmically per the standard.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr char32_t kHangulSBase = 0xAC00;
inline constexpr char32_t kHangulLBase = 0x1100;
inline constexpr char32_t kHangulVBase = 0x1161;
inline constexpr char32_t kHangulTBase = 0x11A7;
inline constexpr int kHangulLCount = 19;
inline constexpr int kHangulVCount = 21;
inline constexpr int kHangulTCount = 28;
inline constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
inline constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

inline int combining_class(char32_t cp) {
    const auto* begin = std::begin(tokscope::detail::kCccRanges);
    const auto* end = std::end(tokscope::detail::kCccRanges);
    auto it = std::upper_bound(begin, end, cp,
                               [](char32_t v, const tokscope::detail::CccRange& r) { return v < r.lo; });
    if (it == begin) return 0;
    --it;
    return cp <= it->hi ? it->ccc : 0;
}

inline void decompose_scalar(char32_t cp, std::vector<char32_t>& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        const int index = static_cast<int>(cp - kHangulSBase);
        out.push_back(kHangulLBase + index / kHangulNCount);
        out.push_back(kHangulVBase + (index % kHangulNCount) / kHangulTCount);
        if (index % kHangulTCount != 0) out.push_back(kHangulTBase + index % kHangulTCount);
        return;
    }
    const auto* begin = std::begin(tokscope::detail::kDecompEntries);
    const auto* end = std::end(tokscope::detail::kDecompEntries);
    auto it = std::lower_bound(begin, end, cp,
                               [](const tokscope::detail::DecompEntry& e, char32_t v) { return e.cp < v; });
    if (it != end && it->cp == cp) {
        for (std::uint32_t i = 0; i < it->length; ++i) {
            out.push_back(tokscope::detail::kDecompData[it->offset + i]);
        }
        return;
    }
    out.push_back(cp);
}

inline char32_t compose_pair(char32_t first, char32_t second) {
    // Hangul LV / LVT composition.
    if (first >= kHangulLBase && first < kHangulLBase + kHangulLCount &&
        second >= kHangulVBase && second < kHangulVBase + kHangulVCount) {
        return kHangulSBase + ((first - kHangulLBase) * kHangulVCount + (second - kHangulVBase)) * kHangulTCount;
    }
    if (first >= kHangulSBase && first < kHangulSBase + kHangulSCount &&
        (first - kHangulSBase) % kHangulTCount == 0 &&
        second > kHangulTBase && second < kHangulTBase + kHangulTCount) {
        return first + (second - kHangulTBase);
    }
    const auto* begin = std::begin(tokscope::detail::kCompositionEntries);
    const auto* end = std::end(tokscope::detail::kCompositionEntries);
    auto it = std::lower_bound(begin, end, std::pair<char32_t, char32_t>{first, second},
                               [](const tokscope::detail::CompositionEntry& e, const std::pair<char32_t, char32_t>& v) {
                                   return e.first != v.first ? e.first < v.first : e.second < v.second;
                               });
    if (it != end && it->first == first && it->second == second) return it->composite;
    return 0;
}

}  // namespace detail

inline std::string to_nfc(std::string_view text) {
    if (text.empty()) return std::string();

    // Decompose.
    std::vector<char32_t> buf;
    buf.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) detail::decompose_scalar(decode_scalar(text, pos), buf);

    // Canonical ordering: stable-sort maximal runs of non-starters by ccc.
    for (std::size_t i = 1; i < buf.size(); ++i) {
        const int ccc = detail::combining_class(buf[i]);
        if (ccc == 0) continue;
        std::size_t j = i;
        while (j > 0 && detail::combining_class(buf[j - 1]) > ccc) {
            std::swap(buf[j - 1], buf[j]);
            --j;
        }
    }

    // Compose.
    std::vector<char32_t> out;
    out.reserve(buf.size());
    int last_starter = -1;
    for (char32_t cp : buf) {
        const int ccc = detail::combining_class(cp);
        if (last_starter >= 0) {
            const bool adjacent = static_cast<std::size_t>(last_starter) + 1 == out.size();
            const int prev_ccc = adjacent ? 0 : detail::combining_class(out.back());
            const bool blocked = !adjacent && (prev_ccc == 0 || prev_ccc >= ccc);
            if (!blocked) {
                if (char32_t composite = detail::compose_pair(out[last_starter], cp)) {
                    out[last_starter] = composite;
                    continue;
                }
            }
        }
        if (ccc == 0) last_starter = static_cast<int>(out.size());
        out.push_back(cp);
    }
    return from_scalars(out);
}

}  // namespace tokscope::unicode
