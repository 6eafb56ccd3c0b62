#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trendforge/model.hpp"

namespace trendforge {

enum class PerturbationKind : uint8_t {
    AppendHashtag,
    AppendMention,
    PunctuationChange,
    SingleWordSwap,
};

std::string perturbation_name(PerturbationKind kind);
std::optional<PerturbationKind> perturbation_from_name(std::string_view name);

// Posting-rate shape around a campaign launch: a pre-launch trickle, a
// linear ramp that takes off shortly before the designated time, then an
// exponential decay.
struct RampSpec {
    int trickle_minutes = 60;
    double trickle_rate_per_min = 0.5;
    int burst_lead_minutes = 10;  // ramp starts this many minutes before launch
    int ramp_minutes = 30;
    double burst_rate_per_min = 240.0;
    double decay_half_life_min = 120.0;
    int decay_cutoff_minutes = 16 * 60;  // sampling horizon after the peak
};

struct CampaignSpec {
    std::string hashtag;
    TimeMs launch_at = 0;
    int n_templates = 60;
    // 0 draws from a log-normal around a mean of 141 participants.
    int n_participants = 0;
    double posts_per_participant_mean = 2.5;
    double perturbation_rate = 0.25;
    std::vector<PerturbationKind> perturbation_kinds = {
        PerturbationKind::AppendHashtag, PerturbationKind::AppendMention,
        PerturbationKind::PunctuationChange, PerturbationKind::SingleWordSwap};
    RampSpec ramp;
    double retweet_multiplier = 1.2;    // expected retweets per original
    double chatter_per_original = 0.8;  // organic spin-off carrying the hashtag
    // When set, chatter and retweet counts are scaled so the campaign's
    // overall tweet count (originals plus retweets) hits this figure.
    std::optional<uint64_t> total_tweets;
};

struct OrganicSpec {
    uint64_t n_tweets = 60'000;
    uint64_t n_authors = 8'000;
    int n_city_hashtags = 50;
    double city_hashtag_rate = 0.8;
    double retweet_rate = 0.25;
    double devanagari_rate = 0.05;
    uint32_t vocabulary_size = 6'000;
    TimeMs span_start = 0;
    TimeMs span_end = 0;
};

struct SynthConfig {
    uint64_t seed = 1;
    OrganicSpec organic;
    std::vector<CampaignSpec> campaigns;
    // Shared supporter pool the campaigns draw participants from; heavier
    // accounts join many campaigns, producing the core-supporter tail.
    uint32_t supporter_pool = 2'000;
    double supporter_zipf_exponent = 1.1;
    bool emit_group_fixtures = true;  // trend alerts, rosters, snapshots
};

struct TweetTruth {
    std::string tweet_id;
    bool campaign = false;
    std::string bank_id;        // campaign tweets only
    uint32_t template_index = 0;
    bool perturbed = false;
    std::string perturbation;
    bool exceeds_fuzzy = false;  // canonical drifted beyond the fuzzy bound
    bool is_retweet = false;
};

struct AuthorTruth {
    std::string author_id;
    std::string role;  // "organic" | "participant" | "core"
    std::vector<std::string> bank_ids;
};

struct GroundTruth {
    std::vector<TweetTruth> tweets;
    std::vector<AuthorTruth> authors;
};

struct SynthResult {
    Corpus corpus;
    std::vector<TemplateBank> banks;
    GroundTruth truth;
    std::vector<TrendSnapshot> snapshots;  // archive-style counts per hashtag
    std::vector<GroupMessage> messages;    // mobilization fixtures
    std::vector<GroupRoster> rosters;
    std::vector<std::string> city_hashtags;
};

// Byte-identical output for identical (config, seed).
SynthResult generate(const SynthConfig& config);

struct DownsampleResult {
    Corpus corpus;
    std::vector<char> kept;  // aligned with the input corpus
};

// Uniform removal; with bias_retweets, retweets are dropped preferentially
// while the overall expected keep fraction is preserved.
DownsampleResult downsample(const Corpus& corpus, double keep_fraction, uint64_t seed,
                            bool bias_retweets = false);

GroundTruth filter_truth(const GroundTruth& truth, const Corpus& original,
                         const std::vector<char>& kept);

SynthConfig config_from_json_file(const std::filesystem::path& path);
void write_truth_file(const GroundTruth& truth, const std::filesystem::path& path);

// Convenience presets used by the verification suite and documentation.
SynthConfig default_detection_config(uint64_t seed, int n_campaigns = 20);
SynthConfig case_study_replay_config(uint64_t seed);
SynthConfig perf_config(uint64_t seed, uint64_t total_tweets = 1'000'000, int n_campaigns = 75);

}  // namespace trendforge
