#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trendforge/model.hpp"

namespace trendforge {

// Which grammar rules fired, for --grammar-report auditing.
struct AlertGrammarTrace {
    std::string date_rule;       // "day-month-name" | "month-name-day" | "numeric-dmy" | ""
    std::string time_rule;       // "meridiem" | "24h" | "dotted-am-default" | ""
    bool time_heuristic = false; // dotted time without meridiem defaulted to a.m.
};

struct TrendAlert {
    std::string group_id;
    std::string sender_id;
    TimeMs sent_at = 0;
    std::string hashtag;  // lowercase, without '#'
    // Present only when both a date and a time expression parsed.
    std::optional<TimeMs> scheduled_at;
    std::vector<std::string> doc_links;  // deduplicated, order-preserving
    std::string raw_excerpt;             // first 280 scalar values of the message
    AlertGrammarTrace grammar;
};

struct AlertParseOptions {
    int offset_minutes = kDefaultDisplayOffsetMin;  // schedules are wall-clock IST
    // Year used when a date omits it; defaults to the message's own year.
    std::optional<int> default_year;
};

// A message is an alert iff it contains a '#' token and at least one of a
// date expression, a time expression, or a document link.
std::optional<TrendAlert> parse_alert(const GroupMessage& message,
                                      const AlertParseOptions& opts = {});

std::vector<TrendAlert> parse_alerts(std::span<const GroupMessage> messages,
                                     const AlertParseOptions& opts = {});

struct SenderProfile {
    std::string sender_id;
    uint64_t alert_count = 0;
    uint64_t groups_reached = 0;
    // Minimum gap between byte-identical texts by this sender in two
    // different groups; absent if never repeated cross-group.
    std::optional<int64_t> min_cross_group_latency_ms;
};

std::vector<SenderProfile> profile_senders(std::span<const TrendAlert> alerts,
                                           std::span<const GroupMessage> messages);

std::vector<std::string> flag_automation(std::span<const SenderProfile> profiles,
                                         int64_t latency_threshold_ms = 1000,
                                         uint64_t min_groups = 2);

std::string alert_to_json_line(const TrendAlert& alert);
void write_alerts_file(std::span<const TrendAlert> alerts, const std::filesystem::path& path,
                       bool grammar_report = false);

}  // namespace trendforge
