#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from Python's bundled Unicode database.

Emits three tables:
  - kWordRanges: inclusive code point ranges whose general category is a
    letter (L*), number (N*), or combining mark (Mn/Mc). Marks are included
    so that scripts built on combining vowel signs (Devanagari, Tamil, ...)
    survive normalization intact.
  - kDigitRanges: ranges with category Nd.
  - kLowerPairs: simple 1:1 lowercase mappings (multi-char expansions are
    deliberately skipped so code point counts stay stable under folding).

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

WORD_CATS = {"Lu", "Ll", "Lt", "Lm", "Lo", "Nd", "Nl", "No", "Mn", "Mc"}
MAX_CP = 0x110000


def ranges_for(predicate):
    out = []
    start = None
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = predicate(chr(cp))
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def lower_pairs():
    pairs = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        low = chr(cp).lower()
        if len(low) == 1 and low != chr(cp):
            pairs.append((cp, ord(low)))
    return pairs


def main():
    word = ranges_for(lambda ch: unicodedata.category(ch) in WORD_CATS)
    digit = ranges_for(lambda ch: unicodedata.category(ch) == "Nd")
    lower = lower_pairs()

    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py (unidata %s). Do not edit.\n"
              % unicodedata.unidata_version)
    out.write("// clang-format off\n")

    out.write("static constexpr CpRange kWordRanges[] = {\n")
    for a, b in word:
        out.write("    {0x%X, 0x%X},\n" % (a, b))
    out.write("};\n\n")

    out.write("static constexpr CpRange kDigitRanges[] = {\n")
    for a, b in digit:
        out.write("    {0x%X, 0x%X},\n" % (a, b))
    out.write("};\n\n")

    out.write("static constexpr CpPair kLowerPairs[] = {\n")
    for a, b in lower:
        out.write("    {0x%X, 0x%X},\n" % (a, b))
    out.write("};\n")
    out.write("// clang-format on\n")


if __name__ == "__main__":
    main()
