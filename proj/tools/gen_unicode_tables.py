#!/usr/bin/env python3
"""Regenerates include/tokscope/unicode_tables.hpp from Python's unicodedata.

Run from the repository root:

    python3 tools/gen_unicode_tables.py > include/tokscope/unicode_tables.hpp
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE = 0xAC00
HANGUL_S_END = 0xD7A3


def category_ranges(cats):
    ranges = []
    lo = None
    prev = None
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            in_set = False
        else:
            in_set = unicodedata.category(chr(cp)) in cats
        if in_set:
            if lo is None:
                lo = cp
            prev = cp
        else:
            if lo is not None:
                ranges.append((lo, prev))
                lo = None
    if lo is not None:
        ranges.append((lo, prev))
    return ranges


def ccc_ranges():
    ranges = []
    lo = None
    prev_cp = None
    prev_ccc = None
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            ccc = 0
        else:
            ccc = unicodedata.combining(chr(cp))
        if ccc != 0:
            if lo is not None and ccc == prev_ccc and cp == prev_cp + 1:
                prev_cp = cp
            else:
                if lo is not None:
                    ranges.append((lo, prev_cp, prev_ccc))
                lo = cp
                prev_cp = cp
                prev_ccc = ccc
        else:
            if lo is not None:
                ranges.append((lo, prev_cp, prev_ccc))
                lo = None
    if lo is not None:
        ranges.append((lo, prev_cp, prev_ccc))
    return ranges


def nfd_tables():
    # Full canonical decompositions, fully expanded; Hangul syllables are
    # decomposed algorithmically at runtime and stay out of the table.
    entries = []
    data = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or HANGUL_S_BASE <= cp <= HANGUL_S_END:
            continue
        ch = chr(cp)
        nfd = unicodedata.normalize("NFD", ch)
        if nfd != ch:
            expansion = [ord(c) for c in nfd]
            entries.append((cp, len(data), len(expansion)))
            data.extend(expansion)
    return entries, data


def composition_pairs():
    # (first, second) -> composite, for every primary composite. Letting the
    # reference normalizer decide keeps exclusions and non-starter
    # decompositions out without repeating the rules here.
    pairs = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or HANGUL_S_BASE <= cp <= HANGUL_S_END:
            continue
        decomp = unicodedata.decomposition(chr(cp))
        if not decomp or decomp.startswith("<"):
            continue
        parts = decomp.split()
        if len(parts) != 2:
            continue
        first, second = int(parts[0], 16), int(parts[1], 16)
        if unicodedata.normalize("NFC", chr(first) + chr(second)) == chr(cp):
            pairs.append((first, second, cp))
    pairs.sort()
    return pairs


def emit_range_table(name, ranges, out):
    out.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for i in range(0, len(ranges), 4):
        chunk = ", ".join(f"{{0x{lo:X}, 0x{hi:X}}}" for lo, hi in ranges[i : i + 4])
        out.write(f"    {chunk},\n")
    out.write("};\n\n")


def main():
    out = sys.stdout
    letters = category_ranges({"Lu", "Ll", "Lt", "Lm", "Lo"})
    digits = category_ranges({"Nd"})
    marks = category_ranges({"Mn", "Mc", "Me"})
    ccc = ccc_ranges()
    decomp_entries, decomp_data = nfd_tables()
    comp = composition_pairs()

    out.write("// Generated by tools/gen_unicode_tables.py — do not edit by hand.\n")
    out.write(f"// Unicode data version: {unicodedata.unidata_version}\n")
    out.write("#pragma once\n\n")
    out.write("#include <cstdint>\n\n")
    out.write("namespace tokscope::detail {\n\n")
    out.write("struct CodepointRange {\n    char32_t lo;\n    char32_t hi;\n};\n\n")
    out.write("struct CccRange {\n    char32_t lo;\n    char32_t hi;\n    std::uint8_t ccc;\n};\n\n")
    out.write("struct DecompEntry {\n    char32_t cp;\n    std::uint32_t offset;\n    std::uint32_t length;\n};\n\n")
    out.write("struct CompositionEntry {\n    char32_t first;\n    char32_t second;\n    char32_t composite;\n};\n\n")

    emit_range_table("kLetterRanges", letters, out)
    emit_range_table("kDigitRanges", digits, out)
    emit_range_table("kMarkRanges", marks, out)

    out.write("inline constexpr CccRange kCccRanges[] = {\n")
    for i in range(0, len(ccc), 4):
        chunk = ", ".join(f"{{0x{lo:X}, 0x{hi:X}, {c}}}" for lo, hi, c in ccc[i : i + 4])
        out.write(f"    {chunk},\n")
    out.write("};\n\n")

    out.write("inline constexpr DecompEntry kDecompEntries[] = {\n")
    for i in range(0, len(decomp_entries), 4):
        chunk = ", ".join(f"{{0x{cp:X}, {off}, {ln}}}" for cp, off, ln in decomp_entries[i : i + 4])
        out.write(f"    {chunk},\n")
    out.write("};\n\n")

    out.write("inline constexpr char32_t kDecompData[] = {\n")
    for i in range(0, len(decomp_data), 8):
        chunk = ", ".join(f"0x{cp:X}" for cp in decomp_data[i : i + 8])
        out.write(f"    {chunk},\n")
    out.write("};\n\n")

    out.write("inline constexpr CompositionEntry kCompositionEntries[] = {\n")
    for i in range(0, len(comp), 4):
        chunk = ", ".join(f"{{0x{a:X}, 0x{b:X}, 0x{c:X}}}" for a, b, c in comp[i : i + 4])
        out.write(f"    {chunk},\n")
    out.write("};\n\n")

    out.write("}  // namespace tokscope::detail\n")


if __name__ == "__main__":
    main()
