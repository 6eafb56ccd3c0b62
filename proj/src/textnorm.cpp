#include "trendforge/textnorm.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "trendforge/unicode.hpp"

namespace trendforge {

namespace {

bool prefix_matches_ci(const std::u32string& text, size_t pos, std::u32string_view prefix) {
    if (pos + prefix.size() > text.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
        char32_t c = text[pos + i];
        if (c < 0x80 && c >= U'A' && c <= U'Z') c += 32;
        if (c != prefix[i]) return false;
    }
    return true;
}

// Erases, in place, every maximal run starting at a URL prefix and ending at
// the next whitespace.
void strip_urls(std::u32string& text) {
    std::u32string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (prefix_matches_ci(text, i, U"http://") || prefix_matches_ci(text, i, U"https://") ||
            prefix_matches_ci(text, i, U"www.")) {
            while (i < text.size() && !is_space_char(text[i])) ++i;
            continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    text.swap(out);
}

// Strips sigil + following letters/digits/underscores (any script).
void strip_sigil_tokens(std::u32string& text, char32_t sigil) {
    std::u32string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == sigil) {
            ++i;
            while (i < text.size() && (is_word_char(text[i]) || text[i] == U'_')) ++i;
            continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    text.swap(out);
}

}  // namespace

NormalForm normalize(std::string_view text, const NormalizeOptions& opts) {
    std::u32string cps = decode_utf8(text);

    strip_urls(cps);
    strip_sigil_tokens(cps, U'#');
    strip_sigil_tokens(cps, U'@');

    if (opts.casefold) {
        for (char32_t& c : cps) c = to_lower(c);
    }

    // Non-word to space, collapse runs, trim — one pass.
    NormalForm form;
    std::u32string canonical;
    canonical.reserve(cps.size());
    bool pending_space = false;
    for (char32_t c : cps) {
        if (is_space_char(c) || !is_word_char(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !canonical.empty()) canonical.push_back(U' ');
        pending_space = false;
        canonical.push_back(c);
    }

    form.char_len = static_cast<uint32_t>(canonical.size());
    form.canonical = encode_utf8(canonical);
    std::u32string spaceless;
    spaceless.reserve(canonical.size());
    for (char32_t c : canonical)
        if (c != U' ') spaceless.push_back(c);
    form.spaceless = encode_utf8(spaceless);
    return form;
}

std::vector<BankNormEntry> normalize_bank(const TemplateBank& bank, const NormalizeOptions& opts) {
    std::vector<BankNormEntry> out;
    out.reserve(bank.templates.size());
    for (size_t i = 0; i < bank.templates.size(); ++i) {
        BankNormEntry entry;
        entry.template_index = static_cast<uint32_t>(i);
        entry.form = normalize(bank.templates[i], opts);
        entry.usable = !entry.form.canonical.empty();
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<NormalForm> normalize_corpus(const Corpus& corpus, unsigned workers,
                                         const NormalizeOptions& opts) {
    std::vector<NormalForm> forms(corpus.tweets.size());
    if (workers <= 1 || corpus.tweets.size() < 1024) {
        for (size_t i = 0; i < corpus.tweets.size(); ++i)
            forms[i] = normalize(corpus.tweets[i].raw_text, opts);
        return forms;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    constexpr size_t kChunk = 2048;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t begin = next.fetch_add(kChunk);
                if (begin >= corpus.tweets.size()) return;
                size_t end = std::min(begin + kChunk, corpus.tweets.size());
                for (size_t i = begin; i < end; ++i)
                    forms[i] = normalize(corpus.tweets[i].raw_text, opts);
            }
        });
    }
    for (auto& t : pool) t.join();
    return forms;
}

}  // namespace trendforge
