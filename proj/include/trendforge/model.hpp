#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trendforge/time.hpp"

namespace trendforge {

struct Tweet {
    std::string tweet_id;
    std::string author_id;
    TimeMs created_at = 0;
    std::string raw_text;
    std::vector<std::string> hashtags;  // lowercase, without '#'
    // Absent means the source carried no retweet flag; inference may fill it.
    std::optional<bool> is_retweet;
    std::optional<std::string> retweet_of;

    bool retweet() const { return is_retweet.value_or(false); }
};

struct TemplateBank {
    std::string bank_id;
    std::string campaign_hashtag;  // lowercase, without '#'
    std::optional<TimeMs> launch_at;
    std::vector<std::string> templates;
    std::optional<std::string> source_url;
};

struct GroupMessage {
    std::string group_id;
    std::string sender_id;
    TimeMs sent_at = 0;  // millisecond precision preserved end-to-end
    std::string text;
};

struct GroupRoster {
    std::string group_id;
    std::vector<std::string> member_ids;
    std::vector<std::string> admin_ids;
};

struct TrendSnapshotEntry {
    std::string hashtag;
    std::optional<int64_t> reported_tweet_count;
};

struct TrendSnapshot {
    TimeMs captured_at = 0;
    std::string location;
    std::vector<TrendSnapshotEntry> entries;  // ordered by rank
};

// Immutable after ingestion; safe to share across parallel readers.
struct Corpus {
    std::vector<Tweet> tweets;
    std::unordered_map<std::string, size_t> by_id;

    const Tweet* find(const std::string& tweet_id) const {
        auto it = by_id.find(tweet_id);
        return it == by_id.end() ? nullptr : &tweets[it->second];
    }
    void rebuild_index() {
        by_id.clear();
        by_id.reserve(tweets.size());
        for (size_t i = 0; i < tweets.size(); ++i) by_id.emplace(tweets[i].tweet_id, i);
    }
};

}  // namespace trendforge
