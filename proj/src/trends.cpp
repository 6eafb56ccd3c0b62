#include "trendforge/trends.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "trendforge/corpus.hpp"

namespace trendforge {

using json = nlohmann::json;

namespace {

int64_t floor_div(TimeMs value, TimeMs divisor) {
    int64_t q = value / divisor;
    if (value % divisor < 0) --q;
    return q;
}

}  // namespace

int64_t VolumeSeries::total() const {
    int64_t sum = 0;
    for (int64_t c : counts) sum += c;
    return sum;
}

VolumeSeries build_series(const std::string& hashtag, const Corpus& corpus, TimeMs bin_width,
                          bool include_retweets) {
    VolumeSeries series;
    series.hashtag = hashtag;
    series.bin_width = bin_width;
    series.includes_retweets = include_retweets;
    if (corpus.tweets.empty() || bin_width <= 0) return series;

    std::vector<TimeMs> stamps;
    for (const Tweet& t : corpus.tweets) {
        if (!include_retweets && t.retweet()) continue;
        if (std::find(t.hashtags.begin(), t.hashtags.end(), hashtag) != t.hashtags.end())
            stamps.push_back(t.created_at);
    }

    TimeMs lo, hi;
    if (stamps.empty()) {
        lo = corpus.tweets.front().created_at;
        hi = lo;
        for (const Tweet& t : corpus.tweets) {
            lo = std::min(lo, t.created_at);
            hi = std::max(hi, t.created_at);
        }
    } else {
        lo = *std::min_element(stamps.begin(), stamps.end());
        hi = *std::max_element(stamps.begin(), stamps.end());
    }
    int64_t first_bin = floor_div(lo, bin_width);
    int64_t last_bin = floor_div(hi, bin_width);
    series.start = first_bin * bin_width;
    series.counts.assign(static_cast<size_t>(last_bin - first_bin + 1), 0);
    for (TimeMs ts : stamps) series.counts[static_cast<size_t>(floor_div(ts, bin_width) - first_bin)]++;
    return series;
}

std::vector<TrendEpisode> detect_trend(const VolumeSeries& series, const TrendDetectParams& params) {
    std::vector<TrendEpisode> episodes;
    if (series.counts.empty() || series.bin_width <= 0 || series.bin_width > params.window)
        return episodes;

    const size_t window_bins = std::max<size_t>(1, static_cast<size_t>(params.window / series.bin_width));
    const size_t clear_bins = std::max<size_t>(1, static_cast<size_t>(params.clear_after / series.bin_width));
    const int64_t clear_threshold = params.effective_clear_threshold();

    // Prefix sums; windows at the start of the series may be partial.
    std::vector<int64_t> prefix(series.counts.size() + 1, 0);
    for (size_t i = 0; i < series.counts.size(); ++i) prefix[i + 1] = prefix[i] + series.counts[i];
    auto window_sum = [&](size_t end_bin) {
        size_t begin = end_bin + 1 >= window_bins ? end_bin + 1 - window_bins : 0;
        return prefix[end_bin + 1] - prefix[begin];
    };
    auto window_end_time = [&](size_t end_bin) {
        return series.bin_start(end_bin) + series.bin_width;
    };

    bool open = false;
    TrendEpisode current;
    size_t below_streak = 0;
    size_t below_start_bin = 0;

    for (size_t e = 0; e < series.counts.size(); ++e) {
        int64_t sum = window_sum(e);
        if (!open) {
            if (sum >= params.threshold) {
                open = true;
                current = TrendEpisode{};
                current.hashtag = series.hashtag;
                current.onset_at = window_end_time(e);
                current.peak_window_count = sum;
                below_streak = 0;
            }
            continue;
        }
        current.peak_window_count = std::max(current.peak_window_count, sum);
        if (sum < clear_threshold) {
            if (below_streak == 0) below_start_bin = e;
            if (++below_streak >= clear_bins) {
                current.cleared_at = window_end_time(below_start_bin);
                // Accumulated volume up to the clearing time.
                size_t last = below_start_bin;  // bins strictly before cleared_at
                current.total_tweets = prefix[last + 1];
                episodes.push_back(current);
                open = false;
                below_streak = 0;
            }
        } else {
            below_streak = 0;
        }
    }
    if (open) {
        current.total_tweets = prefix[series.counts.size()];
        episodes.push_back(current);
    }
    return episodes;
}

CoverageReport estimate_coverage(const Corpus& corpus, std::span<const TrendSnapshot> snapshots) {
    CoverageReport report;
    std::unordered_map<std::string, int64_t> corpus_counts;
    for (const Tweet& t : corpus.tweets) {
        for (const std::string& tag : t.hashtags) corpus_counts[tag]++;
    }
    std::map<std::string, int64_t> reported;
    for (const TrendSnapshot& s : snapshots) {
        for (const TrendSnapshotEntry& e : s.entries) {
            if (!e.reported_tweet_count) continue;
            if (!corpus_counts.count(e.hashtag)) continue;
            auto [it, inserted] = reported.try_emplace(e.hashtag, *e.reported_tweet_count);
            if (!inserted) it->second = std::max(it->second, *e.reported_tweet_count);
        }
    }
    for (const auto& [tag, max_reported] : reported) {
        CoverageEntry entry;
        entry.hashtag = tag;
        entry.corpus_count = corpus_counts[tag];
        entry.reported_count = max_reported;
        if (max_reported <= 0 || entry.corpus_count > max_reported) {
            entry.coverage = 1.0;
            entry.over_reported = true;
        } else {
            entry.coverage = double(entry.corpus_count) / double(max_reported);
        }
        report.entries.push_back(std::move(entry));
    }
    if (!report.entries.empty()) {
        std::vector<double> values;
        values.reserve(report.entries.size());
        for (const CoverageEntry& e : report.entries) values.push_back(e.coverage);
        std::sort(values.begin(), values.end());
        report.min = values.front();
        report.max = values.back();
        size_t n = values.size();
        report.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    }
    return report;
}

TrendSummary trend_summary(std::span<const TrendEpisode> episodes,
                           std::span<const HashtagVerdict> verdicts) {
    TrendSummary summary;
    std::unordered_map<std::string, std::vector<const TrendEpisode*>> by_hashtag;
    for (const TrendEpisode& e : episodes) by_hashtag[e.hashtag].push_back(&e);

    double duration_sum = 0.0;
    uint64_t duration_count = 0;
    double total_sum = 0.0;

    for (const HashtagVerdict& v : verdicts) {
        if (v.label != VerdictLabel::Suspicious && v.label != VerdictLabel::SuspiciousConservative)
            continue;
        summary.campaigns_total++;
        auto it = by_hashtag.find(v.hashtag);
        if (it == by_hashtag.end() || it->second.empty()) {
            summary.campaigns_without++;
            continue;
        }
        summary.campaigns_trending++;
        int64_t campaign_total = 0;
        for (const TrendEpisode* e : it->second) {
            campaign_total = std::max(campaign_total, e->total_tweets);
            if (e->cleared_at) {
                duration_sum += double(*e->cleared_at - e->onset_at);
                duration_count++;
            }
        }
        total_sum += double(campaign_total);
    }
    if (duration_count > 0) summary.mean_episode_duration_ms = duration_sum / double(duration_count);
    if (summary.campaigns_trending > 0)
        summary.mean_total_tweets = total_sum / double(summary.campaigns_trending);
    return summary;
}

void write_series_csv(const VolumeSeries& series, const std::filesystem::path& path,
                      int offset_minutes) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << "bin_start,count\n";
    for (size_t i = 0; i < series.counts.size(); ++i) {
        out << format_rfc3339(series.bin_start(i), offset_minutes) << ',' << series.counts[i]
            << '\n';
    }
}

void write_episodes_file(std::span<const TrendEpisode> episodes, const std::filesystem::path& path,
                         int offset_minutes) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const TrendEpisode& e : episodes) {
        json j;
        j["hashtag"] = e.hashtag;
        j["onset_at"] = format_rfc3339(e.onset_at, offset_minutes);
        if (e.cleared_at) {
            j["cleared_at"] = format_rfc3339(*e.cleared_at, offset_minutes);
            j["duration_minutes"] = double(*e.cleared_at - e.onset_at) / double(kMsPerMinute);
        }
        j["peak_window_count"] = e.peak_window_count;
        j["total_tweets"] = e.total_tweets;
        out << j.dump() << '\n';
    }
}

}  // namespace trendforge
