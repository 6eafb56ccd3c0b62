#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "trendforge/detection.hpp"
#include "trendforge/model.hpp"

namespace trendforge {

constexpr TimeMs kDefaultBinWidthMs = 60'000;          // 1 minute
constexpr TimeMs kDefaultTrendWindowMs = 30 * 60'000;  // 30 minutes
constexpr int64_t kDefaultTrendThreshold = 5000;
constexpr TimeMs kDefaultClearAfterMs = 30 * 60'000;

struct VolumeSeries {
    std::string hashtag;
    TimeMs bin_width = kDefaultBinWidthMs;
    TimeMs start = 0;                // first bin start, aligned to bin_width
    std::vector<int64_t> counts;     // contiguous; empty bins are zeros
    bool includes_retweets = true;

    TimeMs bin_start(size_t i) const { return start + static_cast<TimeMs>(i) * bin_width; }
    int64_t total() const;
};

// Bins cover the hashtag's own span; an unknown hashtag yields zero bins
// over the whole corpus span.
VolumeSeries build_series(const std::string& hashtag, const Corpus& corpus,
                          TimeMs bin_width = kDefaultBinWidthMs, bool include_retweets = true);

struct TrendEpisode {
    std::string hashtag;
    TimeMs onset_at = 0;                 // end of the first qualifying window
    std::optional<TimeMs> cleared_at;    // first time the window drops for good
    int64_t peak_window_count = 0;
    int64_t total_tweets = 0;            // accumulated from series start to clearing
};

struct TrendDetectParams {
    TimeMs window = kDefaultTrendWindowMs;
    int64_t threshold = kDefaultTrendThreshold;  // onset: window sum >= threshold
    TimeMs clear_after = kDefaultClearAfterMs;   // sustained drop needed to clear
    // Hysteresis: an open episode survives while the window sum stays at or
    // above this; 0 means threshold / 10. A single cutoff equal to the onset
    // threshold cannot reproduce the observed multi-hour trend lifetimes at
    // realistic campaign volumes.
    int64_t clear_threshold = 0;

    int64_t effective_clear_threshold() const {
        return clear_threshold > 0 ? clear_threshold : threshold / 10;
    }
};

std::vector<TrendEpisode> detect_trend(const VolumeSeries& series,
                                       const TrendDetectParams& params = {});

struct CoverageEntry {
    std::string hashtag;
    int64_t corpus_count = 0;
    int64_t reported_count = 0;  // max reported across snapshots
    double coverage = 0.0;       // capped at 1.0
    bool over_reported = false;  // corpus count exceeded the archive count
};

struct CoverageReport {
    std::vector<CoverageEntry> entries;  // sorted by hashtag
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;

    bool empty() const { return entries.empty(); }
};

// Coverage per hashtag appearing in both the corpus and the snapshots;
// an empty result means no overlap, which is distinct from zero coverage.
CoverageReport estimate_coverage(const Corpus& corpus, std::span<const TrendSnapshot> snapshots);

struct TrendSummary {
    uint64_t campaigns_total = 0;      // suspicious hashtags considered
    uint64_t campaigns_trending = 0;   // with at least one episode
    uint64_t campaigns_without = 0;
    double mean_episode_duration_ms = 0.0;
    double mean_total_tweets = 0.0;    // over trending campaigns
};

TrendSummary trend_summary(std::span<const TrendEpisode> episodes,
                           std::span<const HashtagVerdict> verdicts);

void write_series_csv(const VolumeSeries& series, const std::filesystem::path& path,
                      int offset_minutes = kDefaultDisplayOffsetMin);
void write_episodes_file(std::span<const TrendEpisode> episodes, const std::filesystem::path& path,
                         int offset_minutes = kDefaultDisplayOffsetMin);

}  // namespace trendforge
