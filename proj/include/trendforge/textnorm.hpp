#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trendforge/model.hpp"

namespace trendforge {

// Shared normal form all matching tiers operate on. canonical is lowercased,
// entity-stripped, single-spaced; spaceless drops the remaining spaces;
// char_len counts Unicode scalar values of canonical.
struct NormalForm {
    std::string canonical;
    std::string spaceless;
    uint32_t char_len = 0;
};

struct NormalizeOptions {
    bool casefold = true;  // --no-casefold flips this
};

// Applies, in order: URL token stripping (http://, https://, www. up to the
// next whitespace), hashtag stripping, mention stripping, lowercase folding,
// non-word replacement by space, whitespace collapsing, trimming. Total for
// any byte sequence; invalid UTF-8 decodes to U+FFFD first.
NormalForm normalize(std::string_view text, const NormalizeOptions& opts = {});

struct BankNormEntry {
    uint32_t template_index = 0;
    NormalForm form;
    bool usable = false;  // false when the canonical form is empty
};

std::vector<BankNormEntry> normalize_bank(const TemplateBank& bank,
                                          const NormalizeOptions& opts = {});

// One NormalForm per tweet, index-aligned with corpus.tweets.
std::vector<NormalForm> normalize_corpus(const Corpus& corpus, unsigned workers = 1,
                                         const NormalizeOptions& opts = {});

}  // namespace trendforge
