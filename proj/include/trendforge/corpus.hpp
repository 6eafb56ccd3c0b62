#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trendforge/model.hpp"

namespace trendforge {

// Input problems a caller can act on: missing files, schema violations in
// strict mode. The CLI maps these to exit status 1.
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct RejectedLine {
    size_t line_number = 0;  // 1-based
    std::string reason;
};

struct IngestReport {
    size_t lines_read = 0;
    size_t accepted = 0;
    std::vector<RejectedLine> rejects;
};

struct IngestOptions {
    bool strict = false;
    // When set, records dated after this instant are rejected.
    std::optional<TimeMs> end_date;
};

struct IngestResult {
    Corpus corpus;
    IngestReport report;
};

IngestResult ingest_tweets(const std::filesystem::path& path, const IngestOptions& opts = {});
IngestResult ingest_tweets_stream(std::istream& in, const IngestOptions& opts = {});

std::string tweet_to_json_line(const Tweet& tweet);
void write_tweets(const Corpus& corpus, std::ostream& out);
void write_tweets_file(const Corpus& corpus, const std::filesystem::path& path);

// Fills absent retweet flags from the "RT @" prefix (optional leading
// whitespace). Explicit flags are never overridden. Returns flags inferred.
size_t infer_retweets(Corpus& corpus);

struct GroupStats {
    size_t total_groups = 0;
    size_t distinct_members = 0;
    std::map<size_t, size_t> groups_per_member;   // #groups joined -> members
    std::map<size_t, size_t> members_per_group;   // group size -> groups
    double median_admin_count = 0.0;
};

GroupStats group_stats(std::span<const GroupRoster> rosters);

struct BankStats {
    size_t bank_count = 0;
    double mean_templates = 0.0;
    double median_templates = 0.0;
    size_t min_templates = 0;
    size_t max_templates = 0;
    double digit_share = 0.0;  // share of templates containing a digit
};

BankStats bank_stats(std::span<const TemplateBank> banks);

// One bank per document: "hashtag:" and optional "launch_at:"/"source_url:"
// header lines, then one template per line. Blank lines are ignored.
TemplateBank parse_bank(std::istream& in, const std::string& bank_id);
TemplateBank load_bank_file(const std::filesystem::path& path);
std::vector<TemplateBank> load_banks_dir(const std::filesystem::path& dir);
void write_bank_file(const TemplateBank& bank, const std::filesystem::path& path);

std::vector<GroupMessage> load_messages_file(const std::filesystem::path& path);
std::vector<GroupRoster> load_rosters_file(const std::filesystem::path& path);
std::vector<TrendSnapshot> load_snapshots_file(const std::filesystem::path& path);
void write_messages_file(std::span<const GroupMessage> messages, const std::filesystem::path& path);
void write_rosters_file(std::span<const GroupRoster> rosters, const std::filesystem::path& path);
void write_snapshots_file(std::span<const TrendSnapshot> snapshots,
                          const std::filesystem::path& path);

}  // namespace trendforge
