#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "trendforge/matching.hpp"
#include "trendforge/model.hpp"
#include "trendforge/textnorm.hpp"

namespace trendforge {

constexpr double kStandardRatioThreshold = 0.20;
constexpr double kConservativeRatioThreshold = 0.35;
constexpr int64_t kMinHashtagVolume = 500;
constexpr int64_t kMinSeedParticipants = 5;
constexpr uint64_t kCoreCampaignThreshold = 5;  // core means joining more than this

struct ParticipantRecord {
    std::string author_id;
    std::set<std::string> campaigns_joined;  // bank_ids
    uint64_t template_tweets_posted = 0;     // originals only
    bool core = false;                       // campaigns_joined > 5
};

struct ParticipationSummary {
    std::map<std::string, uint64_t> participants_per_campaign;  // bank_id -> authors
    std::map<uint64_t, uint64_t> contribution_histogram;        // campaigns joined -> authors
    double mean_participants_per_campaign = 0.0;
};

struct ParticipantOutput {
    std::vector<ParticipantRecord> participants;  // sorted by author_id
    ParticipationSummary summary;
};

// Counts only non-retweet matched tweets. Each tweet is attributed to one
// campaign: a matched bank whose campaign hashtag appears in the tweet's
// hashtags wins (best tier among those); otherwise the best-tier bank.
ParticipantOutput classify_participants(std::span<const MatchRecord> records, const Corpus& corpus,
                                        std::span<const TemplateBank> banks);

double core_contribution_share(std::span<const ParticipantRecord> participants);

enum class VerdictLabel : uint8_t { NotEvaluated, Organic, Suspicious, SuspiciousConservative };

std::string label_name(VerdictLabel label);

struct HashtagVerdict {
    std::string hashtag;
    int64_t volume = 0;            // all tweets carrying the hashtag
    int64_t original_volume = 0;   // non-retweets
    int64_t eligible_volume = 0;   // originals with canonical char_len >= 20
    int64_t repeated_count = 0;    // eligible originals in duplicate groups of size >= 2
    std::optional<double> duplicate_ratio;  // absent when eligible_volume == 0
    int64_t seed_participants = 0;
    VerdictLabel label = VerdictLabel::NotEvaluated;
};

struct DetectionThresholds {
    double standard = kStandardRatioThreshold;         // suspicious when ratio > standard
    double conservative = kConservativeRatioThreshold; // conservative when ratio >= conservative
    int64_t min_volume = kMinHashtagVolume;
    int64_t min_seed = kMinSeedParticipants;
    bool volume_gate_originals = false;  // --min-volume-originals
    bool fuzzy_dup = false;              // --fuzzy-dup sensitivity analysis
};

// Ratio fields only; label stays NotEvaluated.
HashtagVerdict duplicate_ratio(const std::string& hashtag, const Corpus& corpus,
                               std::span<const NormalForm> norms, bool fuzzy_dup = false);

// One verdict per distinct hashtag, sorted by ratio descending (absent
// ratios last, ties by hashtag).
std::vector<HashtagVerdict> classify_hashtags(const Corpus& corpus,
                                              std::span<const NormalForm> norms,
                                              const std::unordered_set<std::string>& seeds,
                                              const DetectionThresholds& thresholds = {});

// Seed set defaulting: authors of original matched tweets from known banks.
std::unordered_set<std::string> seeds_from_matches(std::span<const MatchRecord> records,
                                                   const Corpus& corpus);

struct ScopeEstimate {
    std::string month;  // "YYYY-MM" at the display offset
    int64_t suspicious_count = 0;
    int64_t conservative_count = 0;
};

// Each suspicious hashtag lands in the month of its peak daily volume;
// months with no suspicious hashtags appear as zeros over the corpus span.
std::vector<ScopeEstimate> scope_by_month(std::span<const HashtagVerdict> verdicts,
                                          const Corpus& corpus,
                                          int offset_minutes = kDefaultDisplayOffsetMin);

std::string verdict_to_json_line(const HashtagVerdict& verdict);
void write_verdicts_file(std::span<const HashtagVerdict> verdicts,
                         const std::filesystem::path& path);
std::vector<HashtagVerdict> load_verdicts_file(const std::filesystem::path& path);
void write_verdicts_csv(std::span<const HashtagVerdict> verdicts,
                        const std::filesystem::path& path);

}  // namespace trendforge
