#include "trendforge/alerts.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "trendforge/corpus.hpp"
#include "trendforge/unicode.hpp"

namespace trendforge {

using json = nlohmann::json;

namespace {

const char* kMonthNames[] = {"january", "february", "march",     "april",   "may",      "june",
                             "july",    "august",   "september", "october", "november", "december"};

int month_from_name(std::string name) {
    for (char& c : name)
        if (c >= 'A' && c <= 'Z') c += 32;
    for (int m = 0; m < 12; ++m) {
        const std::string full = kMonthNames[m];
        if (name == full) return m + 1;
        if (name.size() >= 3 && full.rfind(name, 0) == 0) return m + 1;
    }
    if (name == "sept") return 9;
    return 0;
}

const std::string kMonthAlt =
    "january|february|march|april|may|june|july|august|september|october|november|december|"
    "jan|feb|mar|apr|jun|jul|aug|sept|sep|oct|nov|dec";

// "19th March, 2019" / "8 February 2019" — year optional.
const std::regex kDayMonthName("\\b(\\d{1,2})\\s*(?:st|nd|rd|th)?\\s+(" + kMonthAlt +
                                   ")\\.?\\s*,?\\s*(\\d{4})?\\b",
                               std::regex::icase);
// "March 19, 2019"
const std::regex kMonthNameDay("\\b(" + kMonthAlt +
                                   ")\\.?\\s+(\\d{1,2})\\s*(?:st|nd|rd|th)?\\s*,?\\s*(\\d{4})?\\b",
                               std::regex::icase);
// "19/03/2019" / "19-03-2019"
const std::regex kNumericDmy("\\b(\\d{1,2})[/-](\\d{1,2})[/-](\\d{4})\\b");

// "9 a.m." / "9.00 a.m." / "9:00 AM" / "9pm"
const std::regex kMeridiemTime("\\b(\\d{1,2})(?:[:.](\\d{2}))?\\s*([ap])\\.?\\s*m\\b\\.?",
                               std::regex::icase);
// "21:00"
const std::regex kClock24("\\b(\\d{1,2}):(\\d{2})\\b");
// "9.00" without meridiem: defaults to a.m. (flagged as heuristic)
const std::regex kDottedBare("\\b(\\d{1,2})\\.(\\d{2})\\b(?!\\s*[ap]\\.?\\s*m)",
                             std::regex::icase);

struct DateParts {
    int day = 0;
    int month = 0;
    std::optional<int> year;
    std::string rule;
};

std::optional<DateParts> find_date(const std::string& text) {
    std::smatch m;
    if (std::regex_search(text, m, kDayMonthName)) {
        DateParts d;
        d.day = std::stoi(m[1].str());
        d.month = month_from_name(m[2].str());
        if (m[3].matched) d.year = std::stoi(m[3].str());
        d.rule = "day-month-name";
        if (d.month >= 1 && d.day >= 1 && d.day <= 31) return d;
    }
    if (std::regex_search(text, m, kMonthNameDay)) {
        DateParts d;
        d.month = month_from_name(m[1].str());
        d.day = std::stoi(m[2].str());
        if (m[3].matched) d.year = std::stoi(m[3].str());
        d.rule = "month-name-day";
        if (d.month >= 1 && d.day >= 1 && d.day <= 31) return d;
    }
    if (std::regex_search(text, m, kNumericDmy)) {
        DateParts d;
        d.day = std::stoi(m[1].str());
        d.month = std::stoi(m[2].str());
        d.year = std::stoi(m[3].str());
        d.rule = "numeric-dmy";
        if (d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= 31) return d;
    }
    return std::nullopt;
}

struct TimeParts {
    int hour = 0;
    int minute = 0;
    std::string rule;
    bool heuristic = false;
};

std::optional<TimeParts> find_time(const std::string& text) {
    std::smatch m;
    if (std::regex_search(text, m, kMeridiemTime)) {
        TimeParts t;
        t.hour = std::stoi(m[1].str());
        t.minute = m[2].matched ? std::stoi(m[2].str()) : 0;
        char mer = static_cast<char>(std::tolower(m[3].str()[0]));
        if (t.hour >= 1 && t.hour <= 12 && t.minute <= 59) {
            if (mer == 'a') {
                if (t.hour == 12) t.hour = 0;
            } else {
                if (t.hour != 12) t.hour += 12;
            }
            t.rule = "meridiem";
            return t;
        }
    }
    if (std::regex_search(text, m, kClock24)) {
        TimeParts t;
        t.hour = std::stoi(m[1].str());
        t.minute = std::stoi(m[2].str());
        if (t.hour <= 23 && t.minute <= 59) {
            t.rule = "24h";
            return t;
        }
    }
    if (std::regex_search(text, m, kDottedBare)) {
        TimeParts t;
        t.hour = std::stoi(m[1].str());
        t.minute = std::stoi(m[2].str());
        if (t.hour >= 1 && t.hour <= 12 && t.minute <= 59) {
            t.rule = "dotted-am-default";
            t.heuristic = true;
            return t;
        }
    }
    return std::nullopt;
}

// First '#' token, folded to lowercase; empty if none.
std::string first_hashtag(const std::u32string& cps) {
    for (size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] != U'#') continue;
        std::u32string tag;
        size_t j = i + 1;
        while (j < cps.size() && (is_word_char(cps[j]) || cps[j] == U'_')) {
            tag.push_back(to_lower(cps[j]));
            ++j;
        }
        if (!tag.empty()) return encode_utf8(tag);
    }
    return {};
}

std::vector<std::string> find_doc_links(const std::string& text) {
    std::vector<std::string> links;
    std::unordered_set<std::string> seen;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::string token = text.substr(start, i - start);
        while (!token.empty() && std::string(".,;:!?)\"'").find(token.back()) != std::string::npos)
            token.pop_back();
        if (token.find("docs.google.com") == std::string::npos) continue;
        if (seen.insert(token).second) links.push_back(std::move(token));
    }
    return links;
}

}  // namespace

std::optional<TrendAlert> parse_alert(const GroupMessage& message, const AlertParseOptions& opts) {
    std::u32string cps = decode_utf8(message.text);
    std::string hashtag = first_hashtag(cps);
    if (hashtag.empty()) return std::nullopt;

    auto date = find_date(message.text);
    auto time = find_time(message.text);
    auto links = find_doc_links(message.text);
    if (!date && !time && links.empty()) return std::nullopt;

    TrendAlert alert;
    alert.group_id = message.group_id;
    alert.sender_id = message.sender_id;
    alert.sent_at = message.sent_at;
    alert.hashtag = std::move(hashtag);
    alert.doc_links = std::move(links);
    if (cps.size() > 280)
        alert.raw_excerpt = encode_utf8(std::u32string_view(cps.data(), 280));
    else
        alert.raw_excerpt = message.text;

    if (date) alert.grammar.date_rule = date->rule;
    if (time) {
        alert.grammar.time_rule = time->rule;
        alert.grammar.time_heuristic = time->heuristic;
    }
    if (date && time) {
        CivilDateTime c;
        c.year = date->year.value_or(
            opts.default_year.value_or(civil_at_offset(message.sent_at, opts.offset_minutes).year));
        c.month = date->month;
        c.day = date->day;
        c.hour = time->hour;
        c.minute = time->minute;
        if (valid_civil_date(c.year, c.month, c.day))
            alert.scheduled_at = compose_utc(c, opts.offset_minutes);
    }
    return alert;
}

std::vector<TrendAlert> parse_alerts(std::span<const GroupMessage> messages,
                                     const AlertParseOptions& opts) {
    std::vector<TrendAlert> out;
    for (const GroupMessage& m : messages) {
        if (auto alert = parse_alert(m, opts)) out.push_back(std::move(*alert));
    }
    return out;
}

std::vector<SenderProfile> profile_senders(std::span<const TrendAlert> alerts,
                                           std::span<const GroupMessage> messages) {
    std::map<std::string, SenderProfile> by_sender;
    for (const TrendAlert& a : alerts) {
        SenderProfile& p = by_sender[a.sender_id];
        p.sender_id = a.sender_id;
        p.alert_count++;
    }
    if (by_sender.empty()) return {};

    struct SenderMessages {
        std::unordered_set<std::string> groups;
        std::vector<const GroupMessage*> msgs;
    };
    std::unordered_map<std::string, SenderMessages> per_sender;
    for (const GroupMessage& m : messages) {
        auto it = by_sender.find(m.sender_id);
        if (it == by_sender.end()) continue;
        SenderMessages& sm = per_sender[m.sender_id];
        sm.groups.insert(m.group_id);
        sm.msgs.push_back(&m);
    }

    for (auto& [sender, profile] : by_sender) {
        auto it = per_sender.find(sender);
        if (it == per_sender.end()) {
            profile.groups_reached = 1;  // alerts imply at least one group
            continue;
        }
        SenderMessages& sm = it->second;
        profile.groups_reached = std::max<size_t>(1, sm.groups.size());

        // Min gap between byte-identical texts in two different groups:
        // scan each text's postings in time order, tracking the latest
        // timestamp per group seen so far.
        std::sort(sm.msgs.begin(), sm.msgs.end(), [](const GroupMessage* a, const GroupMessage* b) {
            if (a->text != b->text) return a->text < b->text;
            return a->sent_at < b->sent_at;
        });
        std::optional<int64_t> best;
        size_t i = 0;
        while (i < sm.msgs.size()) {
            size_t j = i;
            std::unordered_map<std::string, TimeMs> last_by_group;
            while (j < sm.msgs.size() && sm.msgs[j]->text == sm.msgs[i]->text) {
                const GroupMessage* msg = sm.msgs[j];
                for (const auto& [group, ts] : last_by_group) {
                    if (group == msg->group_id) continue;
                    int64_t gap = msg->sent_at - ts;
                    if (!best || gap < *best) best = gap;
                }
                auto [git, inserted] = last_by_group.try_emplace(msg->group_id, msg->sent_at);
                if (!inserted) git->second = msg->sent_at;
                ++j;
            }
            i = j;
        }
        profile.min_cross_group_latency_ms = best;
    }

    std::vector<SenderProfile> out;
    out.reserve(by_sender.size());
    for (auto& [sender, profile] : by_sender) out.push_back(std::move(profile));
    return out;
}

std::vector<std::string> flag_automation(std::span<const SenderProfile> profiles,
                                         int64_t latency_threshold_ms, uint64_t min_groups) {
    std::vector<const SenderProfile*> flagged;
    for (const SenderProfile& p : profiles) {
        if (!p.min_cross_group_latency_ms) continue;
        if (*p.min_cross_group_latency_ms < latency_threshold_ms && p.groups_reached >= min_groups)
            flagged.push_back(&p);
    }
    std::sort(flagged.begin(), flagged.end(), [](const SenderProfile* a, const SenderProfile* b) {
        if (*a->min_cross_group_latency_ms != *b->min_cross_group_latency_ms)
            return *a->min_cross_group_latency_ms < *b->min_cross_group_latency_ms;
        return a->sender_id < b->sender_id;
    });
    std::vector<std::string> out;
    out.reserve(flagged.size());
    for (const SenderProfile* p : flagged) out.push_back(p->sender_id);
    return out;
}

std::string alert_to_json_line(const TrendAlert& a) {
    json j;
    j["group_id"] = a.group_id;
    j["sender_id"] = a.sender_id;
    j["sent_at"] = format_rfc3339(a.sent_at);
    j["hashtag"] = a.hashtag;
    if (a.scheduled_at) j["scheduled_at"] = format_rfc3339(*a.scheduled_at);
    j["doc_links"] = a.doc_links;
    j["raw_excerpt"] = a.raw_excerpt;
    return j.dump();
}

void write_alerts_file(std::span<const TrendAlert> alerts, const std::filesystem::path& path,
                       bool grammar_report) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const TrendAlert& a : alerts) {
        if (!grammar_report) {
            out << alert_to_json_line(a) << '\n';
            continue;
        }
        json j;
        j["sender_id"] = a.sender_id;
        j["sent_at"] = format_rfc3339(a.sent_at);
        j["hashtag"] = a.hashtag;
        j["date_rule"] = a.grammar.date_rule;
        j["time_rule"] = a.grammar.time_rule;
        j["time_heuristic"] = a.grammar.time_heuristic;
        j["doc_link_count"] = a.doc_links.size();
        out << j.dump() << '\n';
    }
}

}  // namespace trendforge
