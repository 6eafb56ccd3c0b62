#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trendforge/model.hpp"
#include "trendforge/textnorm.hpp"

namespace trendforge {

constexpr int kFuzzyBound = 5;
constexpr uint32_t kExactMinChars = 20;
constexpr uint32_t kFuzzyMinChars = 50;

enum class TierKind : uint8_t { Exact = 0, Spaceless = 1, Fuzzy = 2 };

struct MatchTier {
    TierKind kind = TierKind::Exact;
    int distance = 0;  // 1..5 for Fuzzy, 0 otherwise

    // Exact < Spaceless < Fuzzy(1) < ... < Fuzzy(5)
    int rank() const {
        switch (kind) {
            case TierKind::Exact: return 0;
            case TierKind::Spaceless: return 1;
            default: return 1 + distance;
        }
    }
    bool operator==(const MatchTier&) const = default;
};

std::string tier_name(const MatchTier& tier);
std::optional<MatchTier> tier_from_name(std::string_view name, int distance);

struct MatchRecord {
    std::string tweet_id;
    std::string bank_id;
    uint32_t template_index = 0;
    MatchTier tier;
    TimeMs matched_at = 0;     // copy of the tweet's created_at
    bool is_retweet = false;   // carried downstream; participant logic filters
};

// Levenshtein distance if <= bound, otherwise nullopt. Banded DP: worst-case
// work linear in string length for fixed bound.
std::optional<int> edit_distance_bounded(std::u32string_view a, std::u32string_view b, int bound);
std::optional<int> edit_distance_bounded(std::string_view a, std::string_view b, int bound);

struct TemplateEntry {
    std::string bank_id;
    uint32_t bank_order = 0;  // position in the build input, for dense ids
    uint32_t template_index = 0;
    NormalForm form;
    std::u32string canonical_cps;
    std::array<uint16_t, 64> histogram{};  // hashed code point counts
};

struct TemplateIndex {
    std::vector<TemplateEntry> entries;  // sorted by (bank_id, template_index)
    std::unordered_map<std::string, std::vector<uint32_t>> exact_lookup;
    std::unordered_map<std::string, std::vector<uint32_t>> spaceless_lookup;
    std::unordered_map<uint32_t, std::vector<uint32_t>> length_buckets;

    bool empty() const { return entries.empty(); }
};

TemplateIndex build_index(std::span<const TemplateBank> banks,
                          const NormalizeOptions& opts = {});

struct BankMatch {
    uint32_t entry_id = 0;  // index into TemplateIndex::entries
    MatchTier tier;
};

// Best match per bank, ordered by (bank_id, template_index). The tweet-side
// gates are applied on the supplied normal form.
std::vector<BankMatch> match_form(const NormalForm& form, const TemplateIndex& index);

std::optional<MatchRecord> match_tweet(const Tweet& tweet, const TemplateIndex& index,
                                       const NormalizeOptions& opts = {});

struct MatchStats {
    uint64_t exact = 0;
    uint64_t spaceless = 0;
    std::array<uint64_t, kFuzzyBound + 1> fuzzy{};  // indexed by distance
    uint64_t total() const {
        uint64_t t = exact + spaceless;
        for (uint64_t f : fuzzy) t += f;
        return t;
    }
};

struct MatchOutput {
    std::vector<MatchRecord> records;  // sorted by (tweet_id, bank_id, template_index)
    MatchStats stats;
};

// Deterministic for any worker count: partitions tweets, merges, re-sorts.
MatchOutput match_corpus(const Corpus& corpus, const TemplateIndex& index, unsigned workers = 1,
                         const NormalizeOptions& opts = {});

std::string match_record_to_json_line(const MatchRecord& record);
std::vector<MatchRecord> load_match_records_file(const std::filesystem::path& path);
void write_match_records_file(std::span<const MatchRecord> records,
                              const std::filesystem::path& path);

}  // namespace trendforge
