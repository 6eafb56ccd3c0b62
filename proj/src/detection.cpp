#include "trendforge/detection.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "trendforge/corpus.hpp"
#include "trendforge/unicode.hpp"

namespace trendforge {

using json = nlohmann::json;

ParticipantOutput classify_participants(std::span<const MatchRecord> records, const Corpus& corpus,
                                        std::span<const TemplateBank> banks) {
    std::unordered_map<std::string, std::string> hashtag_by_bank;
    for (const TemplateBank& b : banks) hashtag_by_bank[b.bank_id] = b.campaign_hashtag;

    // Records arrive sorted by (tweet_id, bank_id, template_index); attribute
    // each original tweet to exactly one campaign.
    struct Attribution {
        std::string author_id;
        std::string bank_id;
    };
    std::vector<Attribution> attributions;

    size_t i = 0;
    while (i < records.size()) {
        size_t j = i;
        while (j < records.size() && records[j].tweet_id == records[i].tweet_id) ++j;
        const Tweet* tweet = corpus.find(records[i].tweet_id);
        if (tweet != nullptr && !tweet->retweet() && !records[i].is_retweet) {
            const MatchRecord* chosen = nullptr;
            bool chosen_has_hashtag = false;
            for (size_t k = i; k < j; ++k) {
                const MatchRecord& r = records[k];
                bool has_tag = false;
                if (auto it = hashtag_by_bank.find(r.bank_id); it != hashtag_by_bank.end()) {
                    has_tag = std::find(tweet->hashtags.begin(), tweet->hashtags.end(),
                                        it->second) != tweet->hashtags.end();
                }
                if (chosen == nullptr || (has_tag && !chosen_has_hashtag) ||
                    (has_tag == chosen_has_hashtag && r.tier.rank() < chosen->tier.rank())) {
                    chosen = &r;
                    chosen_has_hashtag = has_tag;
                }
            }
            attributions.push_back({tweet->author_id, chosen->bank_id});
        }
        i = j;
    }

    std::map<std::string, ParticipantRecord> by_author;
    for (const Attribution& a : attributions) {
        ParticipantRecord& p = by_author[a.author_id];
        p.author_id = a.author_id;
        p.campaigns_joined.insert(a.bank_id);
        p.template_tweets_posted++;
    }

    ParticipantOutput out;
    out.participants.reserve(by_author.size());
    for (auto& [author, record] : by_author) {
        record.core = record.campaigns_joined.size() > kCoreCampaignThreshold;
        out.summary.contribution_histogram[record.campaigns_joined.size()]++;
        for (const std::string& bank : record.campaigns_joined)
            out.summary.participants_per_campaign[bank]++;
        out.participants.push_back(std::move(record));
    }
    if (!out.summary.participants_per_campaign.empty()) {
        uint64_t total = 0;
        for (const auto& [bank, count] : out.summary.participants_per_campaign) total += count;
        out.summary.mean_participants_per_campaign =
            double(total) / double(out.summary.participants_per_campaign.size());
    }
    return out;
}

double core_contribution_share(std::span<const ParticipantRecord> participants) {
    uint64_t core_tweets = 0;
    uint64_t all_tweets = 0;
    for (const ParticipantRecord& p : participants) {
        all_tweets += p.template_tweets_posted;
        if (p.core) core_tweets += p.template_tweets_posted;
    }
    if (all_tweets == 0) return 0.0;
    return double(core_tweets) / double(all_tweets);
}

std::string label_name(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::NotEvaluated: return "not_evaluated";
        case VerdictLabel::Organic: return "organic";
        case VerdictLabel::Suspicious: return "suspicious";
        case VerdictLabel::SuspiciousConservative: return "suspicious_conservative";
    }
    return "not_evaluated";
}

namespace {

VerdictLabel label_from_name(const std::string& name) {
    if (name == "organic") return VerdictLabel::Organic;
    if (name == "suspicious") return VerdictLabel::Suspicious;
    if (name == "suspicious_conservative") return VerdictLabel::SuspiciousConservative;
    return VerdictLabel::NotEvaluated;
}

// Merges exact-canonical groups whose representatives are within the fuzzy
// bound; only used for --fuzzy-dup sensitivity runs.
int64_t fuzzy_repeated_count(const std::unordered_map<std::string_view, int64_t>& groups) {
    struct Node {
        std::u32string cps;
        int64_t count;
        size_t parent;
    };
    std::vector<Node> nodes;
    nodes.reserve(groups.size());
    for (const auto& [canonical, count] : groups)
        nodes.push_back({decode_utf8(canonical), count, nodes.size()});
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.cps < b.cps; });
    for (size_t i = 0; i < nodes.size(); ++i) nodes[i].parent = i;

    std::function<size_t(size_t)> find = [&](size_t x) {
        while (nodes[x].parent != x) x = nodes[x].parent = nodes[nodes[x].parent].parent;
        return x;
    };
    std::map<uint32_t, std::vector<size_t>> by_len;
    for (size_t i = 0; i < nodes.size(); ++i)
        by_len[static_cast<uint32_t>(nodes[i].cps.size())].push_back(i);
    for (size_t i = 0; i < nodes.size(); ++i) {
        uint32_t len = static_cast<uint32_t>(nodes[i].cps.size());
        for (uint32_t l = len >= kFuzzyBound ? len - kFuzzyBound : 0; l <= len; ++l) {
            auto it = by_len.find(l);
            if (it == by_len.end()) continue;
            for (size_t j : it->second) {
                if (j >= i) continue;
                if (find(i) == find(j)) continue;
                if (edit_distance_bounded(std::u32string_view(nodes[i].cps),
                                          std::u32string_view(nodes[j].cps), kFuzzyBound))
                    nodes[find(j)].parent = find(i);
            }
        }
    }
    std::unordered_map<size_t, int64_t> cluster_counts;
    for (size_t i = 0; i < nodes.size(); ++i) cluster_counts[find(i)] += nodes[i].count;
    int64_t repeated = 0;
    for (const auto& [root, count] : cluster_counts)
        if (count >= 2) repeated += count;
    return repeated;
}

// Volume, duplicate grouping, and ratio for one hashtag given the tweet
// indices that carry it.
HashtagVerdict verdict_for(const std::string& hashtag, const Corpus& corpus,
                           std::span<const NormalForm> norms,
                           std::span<const size_t> tweet_indices, bool fuzzy_dup) {
    HashtagVerdict v;
    v.hashtag = hashtag;
    std::unordered_map<std::string_view, int64_t> groups;
    for (size_t idx : tweet_indices) {
        const Tweet& t = corpus.tweets[idx];
        v.volume++;
        if (t.retweet()) continue;
        v.original_volume++;
        const NormalForm& form = norms[idx];
        if (form.char_len < kExactMinChars) continue;
        v.eligible_volume++;
        groups[std::string_view(form.canonical)]++;
    }
    if (fuzzy_dup) {
        v.repeated_count = fuzzy_repeated_count(groups);
    } else {
        for (const auto& [canonical, count] : groups) {
            if (count >= 2) v.repeated_count += count;
        }
    }
    if (v.eligible_volume > 0)
        v.duplicate_ratio = double(v.repeated_count) / double(v.eligible_volume);
    return v;
}

}  // namespace

HashtagVerdict duplicate_ratio(const std::string& hashtag, const Corpus& corpus,
                               std::span<const NormalForm> norms, bool fuzzy_dup) {
    std::vector<size_t> indices;
    for (size_t i = 0; i < corpus.tweets.size(); ++i) {
        const auto& tags = corpus.tweets[i].hashtags;
        if (std::find(tags.begin(), tags.end(), hashtag) != tags.end()) indices.push_back(i);
    }
    return verdict_for(hashtag, corpus, norms, indices, fuzzy_dup);
}

std::vector<HashtagVerdict> classify_hashtags(const Corpus& corpus,
                                              std::span<const NormalForm> norms,
                                              const std::unordered_set<std::string>& seeds,
                                              const DetectionThresholds& thresholds) {
    // Bucket tweet indices by hashtag in one pass.
    std::map<std::string, std::vector<size_t>> by_hashtag;
    for (size_t i = 0; i < corpus.tweets.size(); ++i) {
        for (const std::string& tag : corpus.tweets[i].hashtags) by_hashtag[tag].push_back(i);
    }

    std::vector<HashtagVerdict> verdicts;
    verdicts.reserve(by_hashtag.size());
    for (const auto& [hashtag, indices] : by_hashtag) {
        HashtagVerdict v = verdict_for(hashtag, corpus, norms, indices, thresholds.fuzzy_dup);

        std::unordered_set<std::string_view> seed_authors;
        for (size_t idx : indices) {
            const Tweet& t = corpus.tweets[idx];
            if (seeds.count(t.author_id)) seed_authors.insert(t.author_id);
        }
        v.seed_participants = static_cast<int64_t>(seed_authors.size());

        int64_t gate_volume = thresholds.volume_gate_originals ? v.original_volume : v.volume;
        if (gate_volume < thresholds.min_volume || v.seed_participants < thresholds.min_seed) {
            v.label = VerdictLabel::NotEvaluated;
        } else if (v.duplicate_ratio && *v.duplicate_ratio >= thresholds.conservative) {
            v.label = VerdictLabel::SuspiciousConservative;
        } else if (v.duplicate_ratio && *v.duplicate_ratio > thresholds.standard) {
            v.label = VerdictLabel::Suspicious;
        } else {
            v.label = VerdictLabel::Organic;
        }
        verdicts.push_back(std::move(v));
    }

    std::sort(verdicts.begin(), verdicts.end(), [](const HashtagVerdict& a,
                                                   const HashtagVerdict& b) {
        double ra = a.duplicate_ratio.value_or(-1.0);
        double rb = b.duplicate_ratio.value_or(-1.0);
        if (ra != rb) return ra > rb;
        return a.hashtag < b.hashtag;
    });
    return verdicts;
}

std::unordered_set<std::string> seeds_from_matches(std::span<const MatchRecord> records,
                                                   const Corpus& corpus) {
    std::unordered_set<std::string> seeds;
    for (const MatchRecord& r : records) {
        if (r.is_retweet) continue;
        const Tweet* t = corpus.find(r.tweet_id);
        if (t != nullptr && !t->retweet()) seeds.insert(t->author_id);
    }
    return seeds;
}

std::vector<ScopeEstimate> scope_by_month(std::span<const HashtagVerdict> verdicts,
                                          const Corpus& corpus, int offset_minutes) {
    std::vector<ScopeEstimate> out;
    if (corpus.tweets.empty()) return out;

    TimeMs min_ts = corpus.tweets.front().created_at;
    TimeMs max_ts = min_ts;
    for (const Tweet& t : corpus.tweets) {
        min_ts = std::min(min_ts, t.created_at);
        max_ts = std::max(max_ts, t.created_at);
    }

    // Peak posting day per suspicious hashtag (ties go to the earlier day).
    std::unordered_map<std::string, const HashtagVerdict*> suspicious;
    for (const HashtagVerdict& v : verdicts) {
        if (v.label == VerdictLabel::Suspicious || v.label == VerdictLabel::SuspiciousConservative)
            suspicious.emplace(v.hashtag, &v);
    }
    std::unordered_map<std::string, std::map<int64_t, int64_t>> daily;
    for (const Tweet& t : corpus.tweets) {
        for (const std::string& tag : t.hashtags) {
            if (suspicious.count(tag))
                daily[tag][local_day_index(t.created_at, offset_minutes)]++;
        }
    }

    std::map<std::string, ScopeEstimate> months;
    {
        CivilDateTime c = civil_at_offset(min_ts, offset_minutes);
        CivilDateTime end = civil_at_offset(max_ts, offset_minutes);
        int year = c.year, month = c.month;
        for (;;) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
            months[buf].month = buf;
            if (year == end.year && month == end.month) break;
            if (++month > 12) {
                month = 1;
                ++year;
            }
        }
    }

    for (const auto& [tag, verdict] : suspicious) {
        auto it = daily.find(tag);
        if (it == daily.end() || it->second.empty()) continue;
        int64_t peak_day = it->second.begin()->first;
        int64_t peak_count = it->second.begin()->second;
        for (const auto& [day, count] : it->second) {
            if (count > peak_count) {
                peak_day = day;
                peak_count = count;
            }
        }
        std::string month = format_year_month(peak_day * kMsPerDay - offset_minutes * kMsPerMinute,
                                              offset_minutes);
        ScopeEstimate& est = months[month];
        est.month = month;
        est.suspicious_count++;
        if (verdict->label == VerdictLabel::SuspiciousConservative) est.conservative_count++;
    }

    out.reserve(months.size());
    for (auto& [key, est] : months) out.push_back(std::move(est));
    return out;
}

std::string verdict_to_json_line(const HashtagVerdict& v) {
    json j;
    j["hashtag"] = v.hashtag;
    j["volume"] = v.volume;
    j["original_volume"] = v.original_volume;
    j["eligible_volume"] = v.eligible_volume;
    j["repeated_count"] = v.repeated_count;
    if (v.duplicate_ratio) j["duplicate_ratio"] = *v.duplicate_ratio;
    j["seed_participants"] = v.seed_participants;
    j["label"] = label_name(v.label);
    return j.dump();
}

void write_verdicts_file(std::span<const HashtagVerdict> verdicts,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const HashtagVerdict& v : verdicts) out << verdict_to_json_line(v) << '\n';
}

std::vector<HashtagVerdict> load_verdicts_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::vector<HashtagVerdict> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed record");
        HashtagVerdict v;
        v.hashtag = j.value("hashtag", "");
        v.volume = j.value("volume", int64_t{0});
        v.original_volume = j.value("original_volume", int64_t{0});
        v.eligible_volume = j.value("eligible_volume", int64_t{0});
        v.repeated_count = j.value("repeated_count", int64_t{0});
        if (j.contains("duplicate_ratio")) v.duplicate_ratio = j["duplicate_ratio"].get<double>();
        v.seed_participants = j.value("seed_participants", int64_t{0});
        v.label = label_from_name(j.value("label", ""));
        out.push_back(std::move(v));
    }
    return out;
}

void write_verdicts_csv(std::span<const HashtagVerdict> verdicts,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << "hashtag,volume,original_volume,eligible_volume,repeated_count,duplicate_ratio,"
           "seed_participants,label\n";
    char buf[32];
    for (const HashtagVerdict& v : verdicts) {
        out << v.hashtag << ',' << v.volume << ',' << v.original_volume << ','
            << v.eligible_volume << ',' << v.repeated_count << ',';
        if (v.duplicate_ratio) {
            std::snprintf(buf, sizeof buf, "%.6f", *v.duplicate_ratio);
            out << buf;
        }
        out << ',' << v.seed_participants << ',' << label_name(v.label) << '\n';
    }
}

}  // namespace trendforge
