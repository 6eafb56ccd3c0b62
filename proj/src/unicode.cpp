#include "trendforge/unicode.hpp"

#include <algorithm>
#include <iterator>

namespace trendforge {

namespace {

struct CpRange {
    uint32_t lo;
    uint32_t hi;
};
struct CpPair {
    uint32_t from;
    uint32_t to;
};

#include "unicode_tables.inc"

template <size_t N>
bool in_ranges(const CpRange (&table)[N], char32_t cp) {
    auto it = std::upper_bound(std::begin(table), std::end(table), static_cast<uint32_t>(cp),
                               [](uint32_t v, const CpRange& r) { return v < r.lo; });
    if (it == std::begin(table)) return false;
    --it;
    return static_cast<uint32_t>(cp) <= it->hi;
}

constexpr char32_t kReplacement = 0xFFFD;

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    size_t i = 0;
    const size_t n = bytes.size();
    while (i < n) {
        unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
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
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > n) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (bk & 0x3F);
        }
        // Reject overlongs, surrogates, and out-of-range scalars.
        if (ok) {
            if (len == 2 && cp < 0x80) ok = false;
            if (len == 3 && cp < 0x800) ok = false;
            if (len == 4 && cp < 0x10000) ok = false;
            if (cp >= 0xD800 && cp <= 0xDFFF) ok = false;
            if (cp > 0x10FFFF) ok = false;
        }
        if (!ok) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    uint32_t v = cp;
    if (v >= 0xD800 && v <= 0xDFFF) v = kReplacement;
    if (v > 0x10FFFF) v = kReplacement;
    if (v < 0x80) {
        out.push_back(static_cast<char>(v));
    } else if (v < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (v >> 6)));
        out.push_back(static_cast<char>(0x80 | (v & 0x3F)));
    } else if (v < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (v >> 12)));
        out.push_back(static_cast<char>(0x80 | ((v >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (v & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (v >> 18)));
        out.push_back(static_cast<char>(0x80 | ((v >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((v >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (v & 0x3F)));
    }
}

std::string encode_utf8(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

bool is_word_char(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= U'0' && cp <= U'9') || (cp >= U'A' && cp <= U'Z') ||
               (cp >= U'a' && cp <= U'z');
    }
    return in_ranges(kWordRanges, cp);
}

bool is_digit_char(char32_t cp) {
    if (cp < 0x80) return cp >= U'0' && cp <= U'9';
    return in_ranges(kDigitRanges, cp);
}

bool is_space_char(char32_t cp) {
    switch (cp) {
        case 0x09:
        case 0x0A:
        case 0x0B:
        case 0x0C:
        case 0x0D:
        case 0x20:
        case 0x85:
        case 0xA0:
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

char32_t to_lower(char32_t cp) {
    if (cp < 0x80) {
        if (cp >= U'A' && cp <= U'Z') return cp + 32;
        return cp;
    }
    auto it = std::lower_bound(std::begin(kLowerPairs), std::end(kLowerPairs),
                               static_cast<uint32_t>(cp),
                               [](const CpPair& p, uint32_t v) { return p.from < v; });
    if (it != std::end(kLowerPairs) && it->from == static_cast<uint32_t>(cp)) return it->to;
    return cp;
}

}  // namespace trendforge
