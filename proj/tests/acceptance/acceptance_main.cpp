// Verification suite: one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trendforge/alerts.hpp"
#include "trendforge/corpus.hpp"
#include "trendforge/detection.hpp"
#include "trendforge/matching.hpp"
#include "trendforge/syngen.hpp"
#include "trendforge/textnorm.hpp"
#include "trendforge/trends.hpp"
#include "trendforge/unicode.hpp"

using namespace trendforge;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

#define EXPECT(cond, message)                                    \
    do {                                                         \
        if (!(cond)) {                                           \
            out.pass = false;                                    \
            if (!out.detail.empty()) out.detail += "; ";         \
            out.detail += (message);                             \
        }                                                        \
    } while (0)

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

int reference_levenshtein(const std::u32string& a, const std::u32string& b) {
    std::vector<int> row(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        int prev = row[0];
        row[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); ++j) {
            int saved = row[j];
            row[j] = std::min({prev + (a[i - 1] == b[j - 1] ? 0 : 1), row[j] + 1, row[j - 1] + 1});
            prev = saved;
        }
    }
    return row[b.size()];
}

Outcome criterion_matcher_oracle() {
    Outcome out;
    std::mt19937_64 rng(20190319);
    static const char32_t alphabet[] = {U'a', U'b', U'c', U'd', U'e', U' ', U'0',
                                        U'м', U'ो', U'द', U'ी', U'€', U'中'};
    auto random_string = [&](size_t max_len) {
        std::u32string s;
        size_t n = rng() % (max_len + 1);
        for (size_t i = 0; i < n; ++i) s.push_back(alphabet[rng() % std::size(alphabet)]);
        return s;
    };

    auto start = std::chrono::steady_clock::now();
    size_t disagreements = 0;
    size_t within_bound = 0;
    for (int i = 0; i < 10'000; ++i) {
        std::u32string a = random_string(200);
        std::u32string b;
        if (i % 2 == 0) {
            b = random_string(200);
        } else {
            // Mutated copy, biased toward the fuzzy band.
            b = a;
            size_t edits = rng() % 9;
            for (size_t e = 0; e < edits; ++e) {
                if (b.empty()) {
                    b.push_back(alphabet[rng() % std::size(alphabet)]);
                    continue;
                }
                size_t pos = rng() % b.size();
                switch (rng() % 3) {
                    case 0: b[pos] = alphabet[rng() % std::size(alphabet)]; break;
                    case 1: b.erase(b.begin() + static_cast<ptrdiff_t>(pos)); break;
                    default:
                        b.insert(b.begin() + static_cast<ptrdiff_t>(pos),
                                 alphabet[rng() % std::size(alphabet)]);
                        break;
                }
            }
        }
        int reference = reference_levenshtein(a, b);
        auto banded =
            edit_distance_bounded(std::u32string_view(a), std::u32string_view(b), kFuzzyBound);
        if (reference <= kFuzzyBound) {
            ++within_bound;
            if (!banded || *banded != reference) ++disagreements;
        } else if (banded) {
            ++disagreements;
        }
    }
    double elapsed = seconds_since(start);
    EXPECT(disagreements == 0, "disagreements=" + std::to_string(disagreements));
    EXPECT(within_bound > 1'000, "too few pairs within the bound to be meaningful");
    EXPECT(elapsed < 5.0, "runtime " + fmt(elapsed) + "s >= 5s");
    out.detail = "10000 pairs, " + std::to_string(within_bound) + " within bound, " +
                 std::to_string(disagreements) + " disagreements, " + fmt(elapsed) + "s";
    return out;
}

// ---------------------------------------------------------------- criterion 2

Tweet gate_tweet(const std::string& id, const std::string& text) {
    Tweet t;
    t.tweet_id = id;
    t.author_id = "author";
    t.created_at = 1'552'966'200'000;
    t.raw_text = text;
    return t;
}

Outcome criterion_gate_regression() {
    Outcome out;
    std::string c19 = "abcdefghijklmnopqrs";
    std::string c20 = "abcdefghijklmnopqrst";
    std::string c49 = "aaaaabbbbbcccccdddddeeeeefffffggggghhhhhiiiiijjjj";
    std::string c50 = "aaaaabbbbbcccccdddddeeeeefffffggggghhhhhiiiiijjjjj";
    auto mutate3 = [](std::string s) {
        s[7] = 'x';
        s[22] = 'y';
        s[37] = 'z';
        return s;
    };

    TemplateBank bank;
    bank.bank_id = "gates";
    bank.campaign_hashtag = "gates";
    bank.templates = {c19, c20, c49, c50};
    TemplateIndex index = build_index(std::vector<TemplateBank>{bank});

    EXPECT(!match_tweet(gate_tweet("t19", c19), index).has_value(),
           "identical 19-char canonical must not match");
    auto exact20 = match_tweet(gate_tweet("t20", c20), index);
    EXPECT(exact20 && exact20->tier.kind == TierKind::Exact, "20-char canonical must match Exact");

    EXPECT(*edit_distance_bounded(c49, mutate3(c49), kFuzzyBound) == 3, "oracle distance 49");
    EXPECT(*edit_distance_bounded(c50, mutate3(c50), kFuzzyBound) == 3, "oracle distance 50");
    EXPECT(!match_tweet(gate_tweet("t49", mutate3(c49)), index).has_value(),
           "49-char canonical at distance 3 must not match");
    auto fuzzy50 = match_tweet(gate_tweet("t50", mutate3(c50)), index);
    EXPECT(fuzzy50 && fuzzy50->tier.kind == TierKind::Fuzzy && fuzzy50->tier.distance == 3,
           "50-char canonical must match Fuzzy(3)");
    out.detail = "19/20 exact gate and 49/50 fuzzy gate behave exactly";
    return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome criterion_detection_separation() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();

    SynthConfig cfg = default_detection_config(1001, 20);
    SynthResult synth = generate(cfg);
    infer_retweets(synth.corpus);

    TemplateIndex index = build_index(synth.banks);
    MatchOutput matches = match_corpus(synth.corpus, index, 2);
    std::unordered_set<std::string> seeds = seeds_from_matches(matches.records, synth.corpus);
    std::vector<NormalForm> norms = normalize_corpus(synth.corpus, 2);
    std::vector<HashtagVerdict> verdicts = classify_hashtags(synth.corpus, norms, seeds);

    std::unordered_set<std::string> planted;
    for (const CampaignSpec& c : cfg.campaigns) planted.insert(c.hashtag);
    std::unordered_set<std::string> organic(synth.city_hashtags.begin(),
                                            synth.city_hashtags.end());

    std::unordered_map<std::string, const HashtagVerdict*> by_tag;
    for (const HashtagVerdict& v : verdicts) by_tag[v.hashtag] = &v;

    size_t planted_above = 0;
    for (const std::string& tag : planted) {
        auto it = by_tag.find(tag);
        if (it == by_tag.end() || !it->second->duplicate_ratio) continue;
        if (*it->second->duplicate_ratio > 0.20) ++planted_above;
    }
    EXPECT(planted_above == planted.size(),
           "planted above 0.20: " + std::to_string(planted_above) + "/" +
               std::to_string(planted.size()));

    size_t organic_total = 0, organic_below = 0;
    for (const std::string& tag : organic) {
        auto it = by_tag.find(tag);
        if (it == by_tag.end() || !it->second->duplicate_ratio) continue;
        ++organic_total;
        if (*it->second->duplicate_ratio < 0.20) ++organic_below;
    }
    EXPECT(organic_total >= 45, "organic hashtags with defined ratio: " +
                                    std::to_string(organic_total));
    EXPECT(double(organic_below) >= 0.95 * double(organic_total),
           "organic below 0.20: " + std::to_string(organic_below) + "/" +
               std::to_string(organic_total));

    size_t tp = 0, fp = 0;
    for (const HashtagVerdict& v : verdicts) {
        bool positive = v.label == VerdictLabel::Suspicious ||
                        v.label == VerdictLabel::SuspiciousConservative;
        if (!positive) continue;
        if (planted.count(v.hashtag)) ++tp;
        else ++fp;
    }
    double precision = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
    double recall = double(tp) / double(planted.size());
    EXPECT(precision == 1.0, "precision " + fmt(precision));
    EXPECT(recall >= 0.95, "recall " + fmt(recall));

    double elapsed = seconds_since(start);
    EXPECT(elapsed < 60.0, "runtime " + fmt(elapsed) + "s >= 60s");
    std::string stats = "tweets=" + std::to_string(synth.corpus.tweets.size()) +
                        " precision=" + fmt(precision) + " recall=" + fmt(recall) +
                        " organic_below=" + std::to_string(organic_below) + "/" +
                        std::to_string(organic_total) + " " + fmt(elapsed) + "s";
    out.detail = out.detail.empty() ? stats : out.detail + "; " + stats;
    return out;
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion_threshold_monotonicity() {
    Outcome out;
    std::mt19937_64 rng(4242);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        SynthConfig cfg = default_detection_config(5000 + trial, 1 + int(rng() % 4));
        cfg.organic.n_tweets = 2000 + rng() % 6000;
        cfg.organic.n_authors = 500;
        cfg.supporter_pool = 400;
        for (CampaignSpec& c : cfg.campaigns) {
            c.perturbation_rate = double(rng() % 60) / 100.0;
            c.chatter_per_original = double(rng() % 200) / 100.0;
            c.retweet_multiplier = double(rng() % 250) / 100.0;
        }
        SynthResult synth = generate(cfg);
        infer_retweets(synth.corpus);
        TemplateIndex index = build_index(synth.banks);
        MatchOutput matches = match_corpus(synth.corpus, index, 2);
        std::unordered_set<std::string> seeds = seeds_from_matches(matches.records, synth.corpus);
        if (seeds.empty()) seeds.insert("nobody");
        std::vector<NormalForm> norms = normalize_corpus(synth.corpus, 2);

        DetectionThresholds thresholds;
        thresholds.min_volume = 100;  // small corpora still exercise the labels
        std::vector<HashtagVerdict> verdicts =
            classify_hashtags(synth.corpus, norms, seeds, thresholds);
        int64_t standard_count = 0, conservative_count = 0;
        for (const HashtagVerdict& v : verdicts) {
            if (v.label == VerdictLabel::Suspicious ||
                v.label == VerdictLabel::SuspiciousConservative)
                ++standard_count;
            if (v.label == VerdictLabel::SuspiciousConservative) ++conservative_count;
        }
        if (conservative_count > standard_count) {
            EXPECT(false, "config " + std::to_string(trial) + ": conservative " +
                              std::to_string(conservative_count) + " > standard " +
                              std::to_string(standard_count));
            break;
        }
        ++checked;
    }
    out.detail = std::to_string(checked) + "/50 random configs hold conservative <= standard";
    return out;
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion_case_study_replay() {
    Outcome out;
    SynthConfig cfg = case_study_replay_config(1903);
    SynthResult synth = generate(cfg);
    infer_retweets(synth.corpus);
    const std::string& tag = cfg.campaigns[0].hashtag;

    int64_t total = 0;
    for (const Tweet& t : synth.corpus.tweets) {
        if (std::find(t.hashtags.begin(), t.hashtags.end(), tag) != t.hashtags.end()) ++total;
    }
    EXPECT(std::llabs(total - 46'000) < 300,
           "campaign volume " + std::to_string(total) + " far from 46000");

    // (a) 15-minute bin starting 9:00 IST within +-20% of 2,100.
    VolumeSeries quarter = build_series(tag, synth.corpus, 15 * kMsPerMinute);
    TimeMs nine = *parse_rfc3339("2019-03-19T09:00:00+05:30");
    int64_t bin_nine = -1;
    for (size_t i = 0; i < quarter.counts.size(); ++i) {
        if (quarter.bin_start(i) == nine) {
            bin_nine = quarter.counts[i];
            break;
        }
    }
    EXPECT(bin_nine >= 1680 && bin_nine <= 2520,
           "9:00 bin " + std::to_string(bin_nine) + " outside 2100 +-20%");

    // (b) onset between 9:00 and 9:30 at threshold 5,000 / 30-minute window.
    VolumeSeries minute = build_series(tag, synth.corpus);
    TrendDetectParams params;  // defaults: 30 min window, threshold 5000
    std::vector<TrendEpisode> episodes = detect_trend(minute, params);
    EXPECT(!episodes.empty(), "no trend episode detected");
    if (!episodes.empty()) {
        TimeMs onset = episodes[0].onset_at;
        TimeMs nine_thirty = *parse_rfc3339("2019-03-19T09:30:00+05:30");
        EXPECT(onset > nine && onset <= nine_thirty,
               "onset " + format_rfc3339(onset, kDefaultDisplayOffsetMin) + " outside 9:00-9:30");

        // (c) episode duration 8h +- 30min.
        EXPECT(episodes[0].cleared_at.has_value(), "episode never cleared");
        if (episodes[0].cleared_at) {
            double hours = double(*episodes[0].cleared_at - onset) / double(kMsPerHour);
            EXPECT(hours >= 7.5 && hours <= 8.5, "duration " + fmt(hours) + "h outside 8h +- 30min");
            out.detail = "volume=" + std::to_string(total) + " bin9=" + std::to_string(bin_nine) +
                         " onset=" + format_rfc3339(onset, kDefaultDisplayOffsetMin) +
                         " duration=" + fmt(hours) + "h";
        }
    }
    return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion_retweet_exclusion() {
    Outcome out;
    SynthConfig cfg = default_detection_config(606, 3);
    cfg.organic.n_tweets = 8000;
    cfg.organic.n_authors = 800;
    cfg.supporter_pool = 500;
    SynthResult synth = generate(cfg);
    infer_retweets(synth.corpus);

    TemplateIndex index = build_index(synth.banks);

    auto evaluate = [&](const Corpus& corpus) {
        std::vector<NormalForm> norms = normalize_corpus(corpus, 2);
        std::map<std::string, std::vector<size_t>> dummy;
        MatchOutput matches = match_corpus(corpus, index, 2);
        ParticipantOutput participants =
            classify_participants(matches.records, corpus, synth.banks);
        std::unordered_set<std::string> tags;
        for (const Tweet& t : corpus.tweets)
            for (const std::string& h : t.hashtags) tags.insert(h);
        std::ostringstream summary;
        std::vector<std::string> sorted_tags(tags.begin(), tags.end());
        std::sort(sorted_tags.begin(), sorted_tags.end());
        for (const std::string& tag : sorted_tags) {
            HashtagVerdict v = duplicate_ratio(tag, corpus, norms);
            summary << tag << ':' << v.repeated_count << '/' << v.eligible_volume << ';';
        }
        summary << '|';
        for (const ParticipantRecord& p : participants.participants) {
            summary << p.author_id << ':' << p.template_tweets_posted << ':'
                    << p.campaigns_joined.size() << ';';
        }
        return summary.str();
    };

    std::string before = evaluate(synth.corpus);

    Corpus doubled = synth.corpus;
    size_t originals = synth.corpus.tweets.size();
    for (size_t i = 0; i < originals; ++i) {
        const Tweet& src = synth.corpus.tweets[i];
        if (src.retweet()) continue;
        Tweet rt = src;
        rt.tweet_id = "dup-" + src.tweet_id;
        rt.raw_text = "RT @" + src.author_id + ": " + src.raw_text;
        rt.is_retweet = true;
        rt.retweet_of = src.tweet_id;
        doubled.tweets.push_back(std::move(rt));
    }
    doubled.rebuild_index();
    std::string after = evaluate(doubled);

    EXPECT(before == after, "ratios or participant counts changed after retweet injection");
    out.detail = "duplicating " + std::to_string(originals) +
                 " originals as retweets left ratios and participants identical";
    return out;
}

// ---------------------------------------------------------------- criterion 7

Outcome criterion_normalization_fuzz() {
    Outcome out;
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> len_dist(0, 80);
    std::uniform_int_distribution<int> mode_dist(0, 5);
    size_t failures = 0;
    for (int i = 0; i < 100'000; ++i) {
        std::string input;
        int n = len_dist(rng);
        for (int k = 0; k < n; ++k) {
            switch (mode_dist(rng)) {
                case 0: input.push_back(static_cast<char>('a' + rng() % 26)); break;
                case 1: input.push_back(static_cast<char>(rng() % 256)); break;
                case 2: append_utf8(input, static_cast<char32_t>(rng() % 0x110000)); break;
                case 3: append_utf8(input, static_cast<char32_t>(0x900 + rng() % 0x100)); break;
                case 4: input += (rng() % 2) ? "#" : "@"; break;
                default: input.push_back(' '); break;
            }
        }
        NormalForm first = normalize(input);
        NormalForm second = normalize(first.canonical);
        if (second.canonical != first.canonical || second.spaceless != first.spaceless ||
            second.char_len != first.char_len) {
            ++failures;
            if (failures == 1) {
                out.detail = "first failing input (hex):";
                for (unsigned char c : input) {
                    char buf[4];
                    std::snprintf(buf, sizeof buf, " %02x", c);
                    out.detail += buf;
                }
            }
        }
    }
    EXPECT(failures == 0, std::to_string(failures) + " idempotence failures");
    if (out.pass) out.detail = "100000 fuzzed inputs normalized, all idempotent";
    return out;
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion_alert_grammar() {
    Outcome out;
    std::vector<GroupMessage> messages =
        load_messages_file(std::filesystem::path(TRENDFORGE_FIXTURES) / "alerts_verbatim.jsonl");
    EXPECT(messages.size() == 5, "expected 5 fixture messages");

    std::vector<TrendAlert> alerts = parse_alerts(messages);
    EXPECT(alerts.size() == 5, "expected all 5 excerpts to parse as alerts, got " +
                                   std::to_string(alerts.size()));
    if (alerts.size() == 5) {
        const std::string doc_link = "https://docs.google.com/document/***";
        EXPECT(alerts[0].hashtag == "modimeinhaidum", "fixture 1 hashtag");
        EXPECT(alerts[0].scheduled_at == parse_rfc3339("2019-03-19T09:00:00+05:30"),
               "fixture 1 schedule");
        EXPECT(alerts[1].hashtag == "forthefirsttime", "fixture 2 hashtag");
        EXPECT(alerts[1].scheduled_at == parse_rfc3339("2019-02-08T09:00:00+05:30"),
               "fixture 2 schedule");
        EXPECT(alerts[2].hashtag == "rafailgandhi", "fixture 3 hashtag");
        EXPECT(!alerts[2].scheduled_at.has_value(), "fixture 3 must have no schedule");
        EXPECT(alerts[2].doc_links == std::vector<std::string>{doc_link}, "fixture 3 doc link");
        EXPECT(alerts[3].hashtag == "modifiedcities", "fixture 4 hashtag");
        EXPECT(!alerts[3].scheduled_at.has_value(), "fixture 4 must have no schedule");
        EXPECT(alerts[3].doc_links == std::vector<std::string>{doc_link}, "fixture 4 doc link");
        EXPECT(alerts[4].hashtag == "modimeinhaidum", "fixture 5 hashtag");
        EXPECT(alerts[4].scheduled_at == parse_rfc3339("2019-03-19T09:00:00+05:30"),
               "fixture 5 schedule");
        EXPECT(alerts[4].doc_links == std::vector<std::string>{doc_link}, "fixture 5 doc link");
    }
    if (out.pass) out.detail = "all 5 verbatim excerpts parse to their documented fields";
    return out;
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion_coverage() {
    Outcome out;
    SynthConfig cfg = default_detection_config(909, 5);
    cfg.organic.n_tweets = 40'000;
    SynthResult synth = generate(cfg);

    DownsampleResult down = downsample(synth.corpus, 0.65, 909);
    CoverageReport report = estimate_coverage(down.corpus, synth.snapshots);
    EXPECT(!report.empty(), "no coverage entries");
    EXPECT(report.median >= 0.62 && report.median <= 0.68,
           "aggregate coverage " + fmt(report.median) + " outside 0.65 +- 0.03");
    out.detail = "entries=" + std::to_string(report.entries.size()) + " min=" + fmt(report.min) +
                 " median=" + fmt(report.median) + " max=" + fmt(report.max);
    return out;
}

// --------------------------------------------------------------- criterion 10

Outcome criterion_performance() {
    Outcome out;
    SynthConfig cfg = perf_config(110, 1'000'000, 75);
    SynthResult synth = generate(cfg);
    EXPECT(synth.corpus.tweets.size() >= 990'000 && synth.corpus.tweets.size() <= 1'010'000,
           "generated " + std::to_string(synth.corpus.tweets.size()) + " tweets");
    EXPECT(synth.banks.size() == 75, "bank count");
    infer_retweets(synth.corpus);

    TemplateIndex index = build_index(synth.banks);

    auto start = std::chrono::steady_clock::now();
    MatchOutput parallel = match_corpus(synth.corpus, index, 8);
    double elapsed = seconds_since(start);
    EXPECT(elapsed < 120.0, "parallel matching took " + fmt(elapsed) + "s >= 120s");

    MatchOutput serial = match_corpus(synth.corpus, index, 1);

    std::string serial_bytes, parallel_bytes;
    serial_bytes.reserve(serial.records.size() * 96);
    parallel_bytes.reserve(parallel.records.size() * 96);
    for (const MatchRecord& r : serial.records) {
        serial_bytes += match_record_to_json_line(r);
        serial_bytes += '\n';
    }
    for (const MatchRecord& r : parallel.records) {
        parallel_bytes += match_record_to_json_line(r);
        parallel_bytes += '\n';
    }
    EXPECT(serial_bytes == parallel_bytes, "workers=1 vs workers=8 output differs");
    EXPECT(parallel.records.size() > 10'000, "suspiciously few match records: " +
                                                 std::to_string(parallel.records.size()));
    out.detail = "tweets=" + std::to_string(synth.corpus.tweets.size()) +
                 " records=" + std::to_string(parallel.records.size()) + " match(8 workers)=" +
                 fmt(elapsed) + "s, byte-identical across worker counts";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria = {
        {1, "matcher oracle equivalence (10k pairs, <5s)", criterion_matcher_oracle},
        {2, "length gate regression (19/20, 49/50)", criterion_gate_regression},
        {3, "detection separation on planted campaigns (<60s)", criterion_detection_separation},
        {4, "threshold monotonicity over 50 random configs", criterion_threshold_monotonicity},
        {5, "case-study replay: bin, onset, duration", criterion_case_study_replay},
        {6, "retweet exclusion invariant (exact)", criterion_retweet_exclusion},
        {7, "normalization totality and idempotence (100k inputs)", criterion_normalization_fuzz},
        {8, "alert grammar regression (5 verbatim excerpts)", criterion_alert_grammar},
        {9, "coverage estimation at 65% downsampling", criterion_coverage},
        {10, "matching throughput at one million tweets (<120s)", criterion_performance},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        if (!outcome.pass) ++failures;
        std::printf("[%s] %2d. %s — %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
