#include "trendforge/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace trendforge {

using json = nlohmann::json;

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    return in;
}

std::string lower_ascii(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c += 32;
    return s;
}

// Returns an error message, or empty on success.
std::string parse_tweet_line(const std::string& line, Tweet& out) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return "malformed record";
    if (!j.contains("tweet_id") || !j["tweet_id"].is_string()) return "missing tweet_id";
    if (!j.contains("author_id") || !j["author_id"].is_string()) return "missing author_id";
    if (!j.contains("created_at") || !j["created_at"].is_string()) return "missing created_at";
    if (!j.contains("raw_text") || !j["raw_text"].is_string()) return "missing raw_text";

    out.tweet_id = j["tweet_id"].get<std::string>();
    if (out.tweet_id.empty()) return "empty tweet_id";
    out.author_id = j["author_id"].get<std::string>();
    auto ts = parse_rfc3339(j["created_at"].get<std::string>());
    if (!ts) return "malformed timestamp";
    out.created_at = *ts;
    out.raw_text = j["raw_text"].get<std::string>();

    out.hashtags.clear();
    if (j.contains("hashtags")) {
        if (!j["hashtags"].is_array()) return "hashtags must be an array";
        for (const auto& h : j["hashtags"]) {
            if (!h.is_string()) return "hashtags must be strings";
            std::string tag = lower_ascii(h.get<std::string>());
            if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
            if (!tag.empty()) out.hashtags.push_back(std::move(tag));
        }
    }
    out.is_retweet.reset();
    if (j.contains("is_retweet")) {
        if (!j["is_retweet"].is_boolean()) return "is_retweet must be boolean";
        out.is_retweet = j["is_retweet"].get<bool>();
    }
    out.retweet_of.reset();
    if (j.contains("retweet_of")) {
        if (!j["retweet_of"].is_string()) return "retweet_of must be a string";
        out.retweet_of = j["retweet_of"].get<std::string>();
    }
    if (out.is_retweet.has_value() && !*out.is_retweet && out.retweet_of.has_value())
        return "retweet_of present on non-retweet";
    return {};
}

}  // namespace

IngestResult ingest_tweets_stream(std::istream& in, const IngestOptions& opts) {
    IngestResult result;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        result.report.lines_read++;
        Tweet tweet;
        std::string err = parse_tweet_line(line, tweet);
        if (err.empty() && opts.end_date && tweet.created_at > *opts.end_date)
            err = "created_at after corpus end date";
        if (err.empty() && result.corpus.by_id.count(tweet.tweet_id))
            err = "duplicate tweet_id: " + tweet.tweet_id;
        if (!err.empty()) {
            if (opts.strict)
                throw InputError("line " + std::to_string(line_no) + ": " + err);
            result.report.rejects.push_back({line_no, std::move(err)});
            continue;
        }
        result.corpus.by_id.emplace(tweet.tweet_id, result.corpus.tweets.size());
        result.corpus.tweets.push_back(std::move(tweet));
        result.report.accepted++;
    }
    return result;
}

IngestResult ingest_tweets(const std::filesystem::path& path, const IngestOptions& opts) {
    std::ifstream in = open_or_throw(path);
    return ingest_tweets_stream(in, opts);
}

std::string tweet_to_json_line(const Tweet& t) {
    json j;
    j["tweet_id"] = t.tweet_id;
    j["author_id"] = t.author_id;
    j["created_at"] = format_rfc3339(t.created_at);
    j["raw_text"] = t.raw_text;
    j["hashtags"] = t.hashtags;
    if (t.is_retweet.has_value()) j["is_retweet"] = *t.is_retweet;
    if (t.retweet_of.has_value()) j["retweet_of"] = *t.retweet_of;
    return j.dump();
}

void write_tweets(const Corpus& corpus, std::ostream& out) {
    for (const Tweet& t : corpus.tweets) out << tweet_to_json_line(t) << '\n';
}

void write_tweets_file(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    write_tweets(corpus, out);
}

size_t infer_retweets(Corpus& corpus) {
    size_t inferred = 0;
    for (Tweet& t : corpus.tweets) {
        if (t.is_retweet.has_value()) continue;
        size_t i = 0;
        while (i < t.raw_text.size() &&
               (t.raw_text[i] == ' ' || t.raw_text[i] == '\t' || t.raw_text[i] == '\n' ||
                t.raw_text[i] == '\r'))
            ++i;
        if (t.raw_text.compare(i, 4, "RT @") == 0) {
            t.is_retweet = true;
            ++inferred;
        }
    }
    return inferred;
}

GroupStats group_stats(std::span<const GroupRoster> rosters) {
    GroupStats stats;
    stats.total_groups = rosters.size();
    std::unordered_map<std::string, size_t> memberships;
    std::vector<size_t> admin_counts;
    admin_counts.reserve(rosters.size());
    for (const GroupRoster& g : rosters) {
        std::unordered_set<std::string> uniq(g.member_ids.begin(), g.member_ids.end());
        stats.members_per_group[uniq.size()]++;
        for (const std::string& m : uniq) memberships[m]++;
        admin_counts.push_back(g.admin_ids.size());
    }
    stats.distinct_members = memberships.size();
    for (const auto& [member, count] : memberships) stats.groups_per_member[count]++;
    std::sort(admin_counts.begin(), admin_counts.end());
    if (!admin_counts.empty()) {
        size_t n = admin_counts.size();
        stats.median_admin_count =
            n % 2 ? double(admin_counts[n / 2])
                  : (double(admin_counts[n / 2 - 1]) + double(admin_counts[n / 2])) / 2.0;
    }
    return stats;
}

BankStats bank_stats(std::span<const TemplateBank> banks) {
    BankStats stats;
    stats.bank_count = banks.size();
    if (banks.empty()) return stats;
    std::vector<size_t> sizes;
    sizes.reserve(banks.size());
    size_t total_templates = 0;
    size_t with_digit = 0;
    for (const TemplateBank& b : banks) {
        sizes.push_back(b.templates.size());
        for (const std::string& t : b.templates) {
            ++total_templates;
            if (std::any_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
                ++with_digit;
        }
    }
    std::sort(sizes.begin(), sizes.end());
    stats.min_templates = sizes.front();
    stats.max_templates = sizes.back();
    size_t n = sizes.size();
    stats.median_templates = n % 2 ? double(sizes[n / 2])
                                   : (double(sizes[n / 2 - 1]) + double(sizes[n / 2])) / 2.0;
    size_t sum = 0;
    for (size_t s : sizes) sum += s;
    stats.mean_templates = double(sum) / double(n);
    if (total_templates > 0) stats.digit_share = double(with_digit) / double(total_templates);
    return stats;
}

namespace {

std::string trim_copy(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

TemplateBank parse_bank(std::istream& in, const std::string& bank_id) {
    TemplateBank bank;
    bank.bank_id = bank_id;
    std::string line;
    bool in_header = true;
    while (std::getline(in, line)) {
        std::string trimmed = trim_copy(line);
        if (trimmed.empty()) continue;
        if (in_header) {
            if (trimmed.rfind("hashtag:", 0) == 0) {
                std::string tag = lower_ascii(trim_copy(trimmed.substr(8)));
                if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
                bank.campaign_hashtag = tag;
                continue;
            }
            if (trimmed.rfind("launch_at:", 0) == 0) {
                std::string v = trim_copy(trimmed.substr(10));
                auto ts = parse_rfc3339(v);
                if (!ts) throw InputError("bank " + bank_id + ": malformed launch_at: " + v);
                bank.launch_at = *ts;
                continue;
            }
            if (trimmed.rfind("source_url:", 0) == 0) {
                bank.source_url = trim_copy(trimmed.substr(11));
                continue;
            }
            in_header = false;
        }
        bank.templates.push_back(trimmed);
    }
    if (bank.campaign_hashtag.empty())
        throw InputError("bank " + bank_id + ": missing or empty hashtag header");
    if (bank.campaign_hashtag.find_first_of(" \t") != std::string::npos)
        throw InputError("bank " + bank_id + ": hashtag contains whitespace");
    if (bank.templates.empty()) throw InputError("bank " + bank_id + ": no templates");
    return bank;
}

TemplateBank load_bank_file(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    return parse_bank(in, path.stem().string());
}

std::vector<TemplateBank> load_banks_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw InputError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<TemplateBank> banks;
    banks.reserve(files.size());
    for (const auto& f : files) banks.push_back(load_bank_file(f));
    if (banks.empty()) throw InputError("no bank files in directory: " + dir.string());
    return banks;
}

void write_bank_file(const TemplateBank& bank, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << "hashtag: " << bank.campaign_hashtag << '\n';
    if (bank.launch_at) out << "launch_at: " << format_rfc3339(*bank.launch_at) << '\n';
    if (bank.source_url) out << "source_url: " << *bank.source_url << '\n';
    out << '\n';
    for (const std::string& t : bank.templates) out << t << '\n';
}

std::vector<GroupMessage> load_messages_file(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<GroupMessage> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed record");
        GroupMessage m;
        m.group_id = j.value("group_id", "");
        m.sender_id = j.value("sender_id", "");
        auto ts = parse_rfc3339(j.value("sent_at", ""));
        if (!ts)
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed sent_at");
        m.sent_at = *ts;
        m.text = j.value("text", "");
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<GroupRoster> load_rosters_file(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<GroupRoster> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed record");
        GroupRoster g;
        g.group_id = j.value("group_id", "");
        for (const auto& m : j.value("member_ids", json::array()))
            g.member_ids.push_back(m.get<std::string>());
        for (const auto& a : j.value("admin_ids", json::array()))
            g.admin_ids.push_back(a.get<std::string>());
        if (g.member_ids.empty())
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": roster has no members");
        std::unordered_set<std::string> members(g.member_ids.begin(), g.member_ids.end());
        for (const std::string& a : g.admin_ids) {
            if (!members.count(a))
                throw InputError(path.string() + " line " + std::to_string(line_no) +
                                 ": admin not a member: " + a);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<TrendSnapshot> load_snapshots_file(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<TrendSnapshot> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed record");
        TrendSnapshot s;
        auto ts = parse_rfc3339(j.value("captured_at", ""));
        if (!ts)
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed captured_at");
        s.captured_at = *ts;
        s.location = j.value("location", "");
        for (const auto& e : j.value("entries", json::array())) {
            TrendSnapshotEntry entry;
            entry.hashtag = lower_ascii(e.value("hashtag", ""));
            if (e.contains("reported_tweet_count") && !e["reported_tweet_count"].is_null()) {
                int64_t c = e["reported_tweet_count"].get<int64_t>();
                if (c < 0)
                    throw InputError(path.string() + " line " + std::to_string(line_no) +
                                     ": negative reported_tweet_count");
                entry.reported_tweet_count = c;
            }
            s.entries.push_back(std::move(entry));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_messages_file(std::span<const GroupMessage> messages,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const GroupMessage& m : messages) {
        json j;
        j["group_id"] = m.group_id;
        j["sender_id"] = m.sender_id;
        j["sent_at"] = format_rfc3339(m.sent_at);
        j["text"] = m.text;
        out << j.dump() << '\n';
    }
}

void write_rosters_file(std::span<const GroupRoster> rosters, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const GroupRoster& g : rosters) {
        json j;
        j["group_id"] = g.group_id;
        j["member_ids"] = g.member_ids;
        j["admin_ids"] = g.admin_ids;
        out << j.dump() << '\n';
    }
}

void write_snapshots_file(std::span<const TrendSnapshot> snapshots,
                          const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const TrendSnapshot& s : snapshots) {
        json j;
        j["captured_at"] = format_rfc3339(s.captured_at);
        j["location"] = s.location;
        json entries = json::array();
        for (const TrendSnapshotEntry& e : s.entries) {
            json je;
            je["hashtag"] = e.hashtag;
            if (e.reported_tweet_count) je["reported_tweet_count"] = *e.reported_tweet_count;
            entries.push_back(std::move(je));
        }
        j["entries"] = std::move(entries);
        out << j.dump() << '\n';
    }
}

}  // namespace trendforge
