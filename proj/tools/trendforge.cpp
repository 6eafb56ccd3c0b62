#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <unordered_set>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "trendforge/alerts.hpp"
#include "trendforge/corpus.hpp"
#include "trendforge/detection.hpp"
#include "trendforge/matching.hpp"
#include "trendforge/model.hpp"
#include "trendforge/syngen.hpp"
#include "trendforge/textnorm.hpp"
#include "trendforge/trends.hpp"

namespace fs = std::filesystem;
using namespace trendforge;

namespace {

unsigned resolve_workers(unsigned flag_value) {
    if (const char* env = std::getenv("TRENDFORGE_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    if (flag_value >= 1) return flag_value;
    unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

void require_file(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw InputError("missing file: " + path.string());
}

void require_dir(const fs::path& path) {
    if (!fs::is_directory(path)) throw InputError("missing directory: " + path.string());
}

std::unordered_set<std::string> load_seeds_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::unordered_set<std::string> seeds;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) seeds.insert(line);
    }
    return seeds;
}

Corpus load_corpus(const fs::path& path, bool strict) {
    require_file(path);
    IngestOptions opts;
    opts.strict = strict;
    IngestResult result = ingest_tweets(path, opts);
    infer_retweets(result.corpus);
    return std::move(result.corpus);
}

void write_participants_outputs(const ParticipantOutput& output, const fs::path& jsonl_path,
                                const fs::path& histogram_csv) {
    {
        std::ofstream out(jsonl_path);
        if (!out) throw InputError("cannot write file: " + jsonl_path.string());
        for (const ParticipantRecord& p : output.participants) {
            nlohmann::json j;
            j["author_id"] = p.author_id;
            j["campaigns_joined"] = std::vector<std::string>(p.campaigns_joined.begin(),
                                                             p.campaigns_joined.end());
            j["template_tweets_posted"] = p.template_tweets_posted;
            j["core"] = p.core;
            out << j.dump() << '\n';
        }
    }
    {
        std::ofstream out(histogram_csv);
        if (!out) throw InputError("cannot write file: " + histogram_csv.string());
        out << "campaigns_joined,participants\n";
        for (const auto& [joined, count] : output.summary.contribution_histogram)
            out << joined << ',' << count << '\n';
    }
}

void write_scope_csv(std::span<const ScopeEstimate> scope, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << "month,suspicious,conservative\n";
    for (const ScopeEstimate& s : scope)
        out << s.month << ',' << s.suspicious_count << ',' << s.conservative_count << '\n';
}

void write_coverage_csv(const CoverageReport& report, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << "hashtag,corpus_count,reported_count,coverage,over_reported\n";
    char buf[32];
    for (const CoverageEntry& e : report.entries) {
        std::snprintf(buf, sizeof buf, "%.6f", e.coverage);
        out << e.hashtag << ',' << e.corpus_count << ',' << e.reported_count << ',' << buf << ','
            << (e.over_reported ? 1 : 0) << '\n';
    }
}

void write_sender_profiles(std::span<const SenderProfile> profiles,
                           std::span<const std::string> flagged, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    std::unordered_set<std::string> flagged_set(flagged.begin(), flagged.end());
    for (const SenderProfile& p : profiles) {
        nlohmann::json j;
        j["sender_id"] = p.sender_id;
        j["alert_count"] = p.alert_count;
        j["groups_reached"] = p.groups_reached;
        if (p.min_cross_group_latency_ms)
            j["min_cross_group_latency_ms"] = *p.min_cross_group_latency_ms;
        j["automation_flagged"] = flagged_set.count(p.sender_id) > 0;
        out << j.dump() << '\n';
    }
}

struct ThresholdFlags {
    DetectionThresholds detection;
    void attach(CLI::App* cmd) {
        cmd->add_option("--standard", detection.standard,
                        "Duplicate ratio above which a hashtag is suspicious")
            ->capture_default_str();
        cmd->add_option("--conservative", detection.conservative,
                        "Duplicate ratio at or above which the conservative label applies")
            ->capture_default_str();
        cmd->add_option("--min-volume", detection.min_volume,
                        "Minimum tweet volume for a hashtag to be evaluated")
            ->capture_default_str();
        cmd->add_option("--min-seed", detection.min_seed,
                        "Minimum distinct seed participants for evaluation")
            ->capture_default_str();
        cmd->add_flag("--min-volume-originals", detection.volume_gate_originals,
                      "Apply the volume gate to original tweets only");
        cmd->add_flag("--fuzzy-dup", detection.fuzzy_dup,
                      "Group near-duplicates within the fuzzy bound (sensitivity analysis)");
    }
};

int run_report(const fs::path& tweets_path, const fs::path& banks_dir,
               const std::optional<fs::path>& messages_path,
               const std::optional<fs::path>& rosters_path,
               const std::optional<fs::path>& snapshots_path,
               const std::optional<fs::path>& seeds_path, const fs::path& out_dir, bool strict,
               const DetectionThresholds& thresholds, const TrendDetectParams& trend_params,
               unsigned workers, int offset_minutes) {
    // Validate every input before writing anything.
    require_file(tweets_path);
    require_dir(banks_dir);
    if (messages_path) require_file(*messages_path);
    if (rosters_path) require_file(*rosters_path);
    if (snapshots_path) require_file(*snapshots_path);
    if (seeds_path) require_file(*seeds_path);

    Corpus corpus = load_corpus(tweets_path, strict);
    std::vector<TemplateBank> banks = load_banks_dir(banks_dir);

    fs::create_directories(out_dir);

    BankStats bstats = bank_stats(banks);
    std::cout << "bank templates mean=" << bstats.mean_templates
              << " median=" << bstats.median_templates << " min=" << bstats.min_templates
              << " max=" << bstats.max_templates << " digit_share=" << bstats.digit_share << '\n';
    if (rosters_path) {
        std::vector<GroupRoster> rosters = load_rosters_file(*rosters_path);
        if (!rosters.empty()) {
            GroupStats gstats = group_stats(rosters);
            std::cout << "groups=" << gstats.total_groups
                      << " distinct_members=" << gstats.distinct_members
                      << " median_admins=" << gstats.median_admin_count << '\n';
        }
    }

    // Alert forensics.
    std::vector<TrendAlert> alerts;
    std::vector<SenderProfile> profiles;
    std::vector<std::string> flagged;
    if (messages_path) {
        std::vector<GroupMessage> messages = load_messages_file(*messages_path);
        alerts = parse_alerts(messages);
        profiles = profile_senders(alerts, messages);
        flagged = flag_automation(profiles);
    }
    write_alerts_file(alerts, out_dir / "alerts.jsonl");
    write_sender_profiles(profiles, flagged, out_dir / "alert_forensics.jsonl");

    // Matching.
    TemplateIndex index = build_index(banks);
    MatchOutput matches = match_corpus(corpus, index, workers);
    write_match_records_file(matches.records, out_dir / "matches.jsonl");

    // Participants.
    ParticipantOutput participants = classify_participants(matches.records, corpus, banks);
    write_participants_outputs(participants, out_dir / "participants.jsonl",
                               out_dir / "participants_histogram.csv");

    // Verdicts.
    std::unordered_set<std::string> seeds =
        seeds_path ? load_seeds_file(*seeds_path) : seeds_from_matches(matches.records, corpus);
    std::vector<NormalForm> norms = normalize_corpus(corpus, workers);
    std::vector<HashtagVerdict> verdicts = classify_hashtags(corpus, norms, seeds, thresholds);
    write_verdicts_file(verdicts, out_dir / "verdicts.jsonl");
    write_verdicts_csv(verdicts, out_dir / "verdicts.csv");

    // Trend episodes over suspicious hashtags plus the known campaigns.
    std::vector<std::string> episode_tags;
    std::unordered_set<std::string> seen;
    for (const HashtagVerdict& v : verdicts) {
        if ((v.label == VerdictLabel::Suspicious ||
             v.label == VerdictLabel::SuspiciousConservative) &&
            seen.insert(v.hashtag).second)
            episode_tags.push_back(v.hashtag);
    }
    for (const TemplateBank& b : banks) {
        if (seen.insert(b.campaign_hashtag).second) episode_tags.push_back(b.campaign_hashtag);
    }
    std::vector<TrendEpisode> episodes;
    for (const std::string& tag : episode_tags) {
        VolumeSeries series = build_series(tag, corpus);
        for (TrendEpisode& e : detect_trend(series, trend_params)) episodes.push_back(std::move(e));
    }
    write_episodes_file(episodes, out_dir / "episodes.jsonl", offset_minutes);

    // Monthly scope.
    write_scope_csv(scope_by_month(verdicts, corpus, offset_minutes), out_dir / "scope_monthly.csv");

    // Coverage.
    CoverageReport coverage;
    if (snapshots_path) {
        std::vector<TrendSnapshot> snapshots = load_snapshots_file(*snapshots_path);
        coverage = estimate_coverage(corpus, snapshots);
    }
    write_coverage_csv(coverage, out_dir / "coverage.csv");

    TrendSummary summary = trend_summary(episodes, verdicts);
    std::cout << "tweets=" << corpus.tweets.size() << " banks=" << banks.size()
              << " matches=" << matches.records.size()
              << " participants=" << participants.participants.size()
              << " verdicts=" << verdicts.size() << " episodes=" << episodes.size()
              << " trending_campaigns=" << summary.campaigns_trending << '\n';
    if (!coverage.empty()) {
        std::cout << "coverage min=" << coverage.min << " median=" << coverage.median
                  << " max=" << coverage.max << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corpus forensics for coordinated hashtag-manipulation campaigns"};
    app.require_subcommand(1);

    // ---- ingest ----
    std::string in_tweets, in_out, in_end_date;
    bool in_strict = false;
    auto* cmd_ingest = app.add_subcommand("ingest", "Validate a tweet corpus and report rejects");
    cmd_ingest->add_option("--tweets", in_tweets, "Line-delimited tweet records")->required();
    cmd_ingest->add_flag("--strict", in_strict, "Abort on the first reject");
    cmd_ingest->add_option("--end-date", in_end_date,
                           "Reject records dated after this RFC 3339 instant");
    cmd_ingest->add_option("--out", in_out, "Write the accepted records to this file");

    // ---- normalize ----
    bool norm_stdin = false, norm_no_casefold = false;
    auto* cmd_norm = app.add_subcommand("normalize", "Canonicalize text (debugging aid)");
    cmd_norm->add_flag("--stdin", norm_stdin, "Read lines from standard input");
    cmd_norm->add_flag("--no-casefold", norm_no_casefold, "Skip lowercase folding");

    // ---- parse-alerts ----
    std::string pa_messages, pa_out, pa_grammar;
    auto* cmd_alerts = app.add_subcommand("parse-alerts", "Extract trend alerts from group messages");
    cmd_alerts->add_option("--messages", pa_messages, "Line-delimited group messages")->required();
    cmd_alerts->add_option("--out", pa_out, "Output alert records")->required();
    cmd_alerts->add_option("--grammar-report", pa_grammar,
                           "Also write which grammar rule matched per alert");

    // ---- match ----
    std::string m_tweets, m_banks, m_out;
    unsigned m_workers = 0;
    bool m_no_casefold = false, m_strict = false;
    auto* cmd_match = app.add_subcommand("match", "Match tweets against template banks");
    cmd_match->add_option("--tweets", m_tweets, "Line-delimited tweet records")->required();
    cmd_match->add_option("--banks", m_banks, "Directory of template bank files")->required();
    cmd_match->add_option("--out", m_out, "Output match records")->required();
    cmd_match->add_option("--workers", m_workers, "Worker threads (0 = all cores)");
    cmd_match->add_flag("--strict", m_strict, "Abort ingestion on the first reject");
    cmd_match->add_flag("--no-casefold", m_no_casefold, "Skip lowercase folding");

    // ---- participants ----
    std::string p_tweets, p_banks, p_matches, p_out_dir;
    auto* cmd_part = app.add_subcommand("participants", "Classify campaign participants");
    cmd_part->add_option("--tweets", p_tweets, "Line-delimited tweet records")->required();
    cmd_part->add_option("--matches", p_matches, "Match records from `match`")->required();
    cmd_part->add_option("--banks", p_banks, "Directory of template bank files")->required();
    cmd_part->add_option("--out-dir", p_out_dir, "Output directory")->required();

    // ---- detect ----
    std::string d_tweets, d_matches, d_seeds, d_out, d_csv;
    unsigned d_workers = 0;
    ThresholdFlags d_thresholds;
    auto* cmd_detect = app.add_subcommand("detect", "Classify hashtags by duplicate content");
    cmd_detect->add_option("--tweets", d_tweets, "Line-delimited tweet records")->required();
    cmd_detect->add_option("--matches", d_matches, "Match records (for the default seed set)");
    cmd_detect->add_option("--seeds", d_seeds, "Seed participant ids, one per line");
    cmd_detect->add_option("--out", d_out, "Output verdict records")->required();
    cmd_detect->add_option("--csv", d_csv, "CSV summary (default: <out>.csv)");
    cmd_detect->add_option("--workers", d_workers, "Worker threads (0 = all cores)");
    d_thresholds.attach(cmd_detect);

    // ---- trends ----
    std::string t_tweets, t_hashtags, t_verdicts, t_out_dir;
    bool t_no_retweets = false;
    int64_t t_bin_width_s = 60;
    TrendDetectParams t_params;
    int64_t t_window_min = 30, t_clear_after_min = 30;
    auto* cmd_trends = app.add_subcommand("trends", "Per-hashtag volume series and trend episodes");
    cmd_trends->add_option("--tweets", t_tweets, "Line-delimited tweet records")->required();
    cmd_trends->add_option("--hashtags", t_hashtags, "Comma-separated hashtags to analyze");
    cmd_trends->add_option("--verdicts", t_verdicts, "Analyze suspicious hashtags from this file");
    cmd_trends->add_option("--out-dir", t_out_dir, "Output directory")->required();
    cmd_trends->add_option("--bin-width", t_bin_width_s, "Series bin width in seconds")
        ->capture_default_str();
    cmd_trends->add_option("--window", t_window_min, "Trend window in minutes")
        ->capture_default_str();
    cmd_trends->add_option("--threshold", t_params.threshold,
                           "Tweets within the window that open an episode")
        ->capture_default_str();
    cmd_trends->add_option("--clear-after", t_clear_after_min,
                           "Minutes below the clearing level before an episode ends")
        ->capture_default_str();
    cmd_trends->add_option("--clear-threshold", t_params.clear_threshold,
                           "Window sum that keeps an episode alive (0 = threshold/10)")
        ->capture_default_str();
    cmd_trends->add_flag("--no-retweets", t_no_retweets, "Exclude retweets from series");

    // ---- scope ----
    std::string s_tweets, s_verdicts, s_out;
    auto* cmd_scope = app.add_subcommand("scope", "Monthly count of suspicious hashtags");
    cmd_scope->add_option("--tweets", s_tweets, "Line-delimited tweet records")->required();
    cmd_scope->add_option("--verdicts", s_verdicts, "Verdict records from `detect`")->required();
    cmd_scope->add_option("--out", s_out, "Output CSV")->required();

    // ---- coverage ----
    std::string c_tweets, c_snapshots, c_out;
    auto* cmd_cov = app.add_subcommand("coverage", "Corpus coverage against trend-archive counts");
    cmd_cov->add_option("--tweets", c_tweets, "Line-delimited tweet records")->required();
    cmd_cov->add_option("--snapshots", c_snapshots, "Trend snapshot records")->required();
    cmd_cov->add_option("--out", c_out, "Output CSV")->required();

    // ---- synth ----
    std::string sy_config, sy_out_dir;
    uint64_t sy_seed = 1;
    double sy_downsample = 1.0;
    bool sy_bias_retweets = false;
    auto* cmd_synth = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    cmd_synth->add_option("--config", sy_config, "Generator config (JSON)")->required();
    cmd_synth->add_option("--seed", sy_seed, "RNG seed")->capture_default_str();
    cmd_synth->add_option("--out-dir", sy_out_dir, "Output directory")->required();
    cmd_synth
        ->add_option("--downsample-keep", sy_downsample,
                     "Also emit a downsampled corpus keeping this fraction")
        ->capture_default_str();
    cmd_synth->add_flag("--bias-retweets", sy_bias_retweets,
                        "Drop retweets preferentially when downsampling");

    // ---- report ----
    std::string r_tweets, r_banks, r_messages, r_rosters, r_snapshots, r_seeds, r_out_dir;
    bool r_strict = false;
    unsigned r_workers = 0;
    int r_offset = kDefaultDisplayOffsetMin;
    ThresholdFlags r_thresholds;
    TrendDetectParams r_trend;
    int64_t r_window_min = 30, r_clear_after_min = 30;
    auto* cmd_report = app.add_subcommand("report", "Run the whole pipeline into a report bundle");
    cmd_report->add_option("--tweets", r_tweets, "Line-delimited tweet records")->required();
    cmd_report->add_option("--banks", r_banks, "Directory of template bank files")->required();
    cmd_report->add_option("--messages", r_messages, "Group messages for alert forensics");
    cmd_report->add_option("--rosters", r_rosters, "Group rosters for membership statistics");
    cmd_report->add_option("--snapshots", r_snapshots, "Trend snapshots for coverage");
    cmd_report->add_option("--seeds", r_seeds, "Seed participants (default: matched authors)");
    cmd_report->add_option("--out-dir", r_out_dir, "Output directory")->required();
    cmd_report->add_flag("--strict", r_strict, "Abort ingestion on the first reject");
    cmd_report->add_option("--workers", r_workers, "Worker threads (0 = all cores)");
    cmd_report->add_option("--display-offset", r_offset, "Report offset in minutes east of UTC")
        ->capture_default_str();
    r_thresholds.attach(cmd_report);
    cmd_report->add_option("--window", r_window_min, "Trend window in minutes")
        ->capture_default_str();
    cmd_report->add_option("--threshold", r_trend.threshold,
                           "Tweets within the window that open an episode")
        ->capture_default_str();
    cmd_report->add_option("--clear-after", r_clear_after_min,
                           "Minutes below the clearing level before an episode ends")
        ->capture_default_str();
    cmd_report->add_option("--clear-threshold", r_trend.clear_threshold,
                           "Window sum that keeps an episode alive (0 = threshold/10)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_ingest->parsed()) {
            require_file(in_tweets);
            IngestOptions opts;
            opts.strict = in_strict;
            if (!in_end_date.empty()) {
                auto ts = parse_rfc3339(in_end_date);
                if (!ts) throw InputError("malformed --end-date: " + in_end_date);
                opts.end_date = *ts;
            }
            IngestResult result = ingest_tweets(in_tweets, opts);
            std::cout << "lines=" << result.report.lines_read
                      << " accepted=" << result.report.accepted
                      << " rejected=" << result.report.rejects.size() << '\n';
            for (const RejectedLine& r : result.report.rejects)
                std::cout << "reject line " << r.line_number << ": " << r.reason << '\n';
            if (!in_out.empty()) write_tweets_file(result.corpus, in_out);
            return 0;
        }
        if (cmd_norm->parsed()) {
            if (!norm_stdin) throw InputError("normalize requires --stdin");
            NormalizeOptions opts;
            opts.casefold = !norm_no_casefold;
            std::string line;
            while (std::getline(std::cin, line)) {
                NormalForm form = normalize(line, opts);
                std::cout << form.canonical << '\t' << form.spaceless << '\n';
            }
            return 0;
        }
        if (cmd_alerts->parsed()) {
            require_file(pa_messages);
            std::vector<GroupMessage> messages = load_messages_file(pa_messages);
            std::vector<TrendAlert> alerts = parse_alerts(messages);
            write_alerts_file(alerts, pa_out);
            if (!pa_grammar.empty()) write_alerts_file(alerts, pa_grammar, true);
            std::cout << "messages=" << messages.size() << " alerts=" << alerts.size() << '\n';
            return 0;
        }
        if (cmd_match->parsed()) {
            require_file(m_tweets);
            require_dir(m_banks);
            NormalizeOptions norm_opts;
            norm_opts.casefold = !m_no_casefold;
            Corpus corpus = load_corpus(m_tweets, m_strict);
            std::vector<TemplateBank> banks = load_banks_dir(m_banks);
            TemplateIndex index = build_index(banks, norm_opts);
            MatchOutput output = match_corpus(corpus, index, resolve_workers(m_workers), norm_opts);
            write_match_records_file(output.records, m_out);
            std::cout << "records=" << output.records.size() << " exact=" << output.stats.exact
                      << " spaceless=" << output.stats.spaceless;
            for (int d = 1; d <= kFuzzyBound; ++d)
                std::cout << " fuzzy" << d << "=" << output.stats.fuzzy[static_cast<size_t>(d)];
            std::cout << '\n';
            return 0;
        }
        if (cmd_part->parsed()) {
            require_file(p_tweets);
            require_file(p_matches);
            require_dir(p_banks);
            Corpus corpus = load_corpus(p_tweets, false);
            std::vector<TemplateBank> banks = load_banks_dir(p_banks);
            std::vector<MatchRecord> records = load_match_records_file(p_matches);
            ParticipantOutput output = classify_participants(records, corpus, banks);
            fs::create_directories(p_out_dir);
            write_participants_outputs(output, fs::path(p_out_dir) / "participants.jsonl",
                                       fs::path(p_out_dir) / "participants_histogram.csv");
            std::cout << "participants=" << output.participants.size()
                      << " core_share=" << core_contribution_share(output.participants)
                      << " mean_per_campaign=" << output.summary.mean_participants_per_campaign
                      << '\n';
            return 0;
        }
        if (cmd_detect->parsed()) {
            require_file(d_tweets);
            if (d_seeds.empty() && d_matches.empty())
                throw InputError("detect needs --seeds or --matches for the seed set");
            Corpus corpus = load_corpus(d_tweets, false);
            std::unordered_set<std::string> seeds;
            if (!d_seeds.empty()) {
                require_file(d_seeds);
                seeds = load_seeds_file(d_seeds);
            } else {
                require_file(d_matches);
                seeds = seeds_from_matches(load_match_records_file(d_matches), corpus);
            }
            if (seeds.empty()) throw InputError("seed set is empty");
            unsigned workers = resolve_workers(d_workers);
            std::vector<NormalForm> norms = normalize_corpus(corpus, workers);
            std::vector<HashtagVerdict> verdicts =
                classify_hashtags(corpus, norms, seeds, d_thresholds.detection);
            write_verdicts_file(verdicts, d_out);
            fs::path csv = d_csv.empty() ? fs::path(d_out).replace_extension(".csv") : fs::path(d_csv);
            write_verdicts_csv(verdicts, csv);
            size_t suspicious = 0, conservative = 0;
            for (const HashtagVerdict& v : verdicts) {
                if (v.label == VerdictLabel::Suspicious ||
                    v.label == VerdictLabel::SuspiciousConservative)
                    ++suspicious;
                if (v.label == VerdictLabel::SuspiciousConservative) ++conservative;
            }
            std::cout << "hashtags=" << verdicts.size() << " suspicious=" << suspicious
                      << " conservative=" << conservative << '\n';
            return 0;
        }
        if (cmd_trends->parsed()) {
            require_file(t_tweets);
            if (t_hashtags.empty() && t_verdicts.empty())
                throw InputError("trends needs --hashtags or --verdicts");
            Corpus corpus = load_corpus(t_tweets, false);
            std::vector<std::string> tags;
            if (!t_hashtags.empty()) {
                std::string tag;
                std::stringstream ss(t_hashtags);
                while (std::getline(ss, tag, ',')) {
                    if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
                    for (char& ch : tag)
                        if (ch >= 'A' && ch <= 'Z') ch += 32;
                    if (!tag.empty()) tags.push_back(tag);
                }
            } else {
                require_file(t_verdicts);
                for (const HashtagVerdict& v : load_verdicts_file(t_verdicts)) {
                    if (v.label == VerdictLabel::Suspicious ||
                        v.label == VerdictLabel::SuspiciousConservative)
                        tags.push_back(v.hashtag);
                }
            }
            t_params.window = t_window_min * kMsPerMinute;
            t_params.clear_after = t_clear_after_min * kMsPerMinute;
            fs::create_directories(t_out_dir);
            std::vector<TrendEpisode> episodes;
            for (const std::string& tag : tags) {
                VolumeSeries series =
                    build_series(tag, corpus, t_bin_width_s * 1000, !t_no_retweets);
                write_series_csv(series, fs::path(t_out_dir) / ("series_" + tag + ".csv"));
                for (TrendEpisode& e : detect_trend(series, t_params))
                    episodes.push_back(std::move(e));
            }
            write_episodes_file(episodes, fs::path(t_out_dir) / "episodes.jsonl");
            std::cout << "hashtags=" << tags.size() << " episodes=" << episodes.size() << '\n';
            return 0;
        }
        if (cmd_scope->parsed()) {
            require_file(s_tweets);
            require_file(s_verdicts);
            Corpus corpus = load_corpus(s_tweets, false);
            std::vector<HashtagVerdict> verdicts = load_verdicts_file(s_verdicts);
            write_scope_csv(scope_by_month(verdicts, corpus), s_out);
            return 0;
        }
        if (cmd_cov->parsed()) {
            require_file(c_tweets);
            require_file(c_snapshots);
            Corpus corpus = load_corpus(c_tweets, false);
            CoverageReport report = estimate_coverage(corpus, load_snapshots_file(c_snapshots));
            write_coverage_csv(report, c_out);
            if (report.empty())
                std::cout << "no overlapping hashtags\n";
            else
                std::cout << "coverage min=" << report.min << " median=" << report.median
                          << " max=" << report.max << '\n';
            return 0;
        }
        if (cmd_synth->parsed()) {
            require_file(sy_config);
            SynthConfig config = config_from_json_file(sy_config);
            if (cmd_synth->count("--seed")) config.seed = sy_seed;
            SynthResult result = generate(config);
            fs::path dir(sy_out_dir);
            fs::create_directories(dir / "banks");
            write_tweets_file(result.corpus, dir / "tweets.jsonl");
            for (const TemplateBank& bank : result.banks)
                write_bank_file(bank, dir / "banks" / (bank.bank_id + ".txt"));
            write_truth_file(result.truth, dir / "truth.jsonl");
            write_snapshots_file(result.snapshots, dir / "snapshots.jsonl");
            if (!result.messages.empty())
                write_messages_file(result.messages, dir / "messages.jsonl");
            if (!result.rosters.empty()) write_rosters_file(result.rosters, dir / "rosters.jsonl");
            if (sy_downsample < 1.0) {
                DownsampleResult down =
                    downsample(result.corpus, sy_downsample, config.seed, sy_bias_retweets);
                write_tweets_file(down.corpus, dir / "tweets_downsampled.jsonl");
                write_truth_file(filter_truth(result.truth, result.corpus, down.kept),
                                 dir / "truth_downsampled.jsonl");
            }
            std::cout << "tweets=" << result.corpus.tweets.size()
                      << " banks=" << result.banks.size() << '\n';
            return 0;
        }
        if (cmd_report->parsed()) {
            r_trend.window = r_window_min * kMsPerMinute;
            r_trend.clear_after = r_clear_after_min * kMsPerMinute;
            std::optional<fs::path> messages, rosters, snapshots, seeds;
            if (!r_messages.empty()) messages = r_messages;
            if (!r_rosters.empty()) rosters = r_rosters;
            if (!r_snapshots.empty()) snapshots = r_snapshots;
            if (!r_seeds.empty()) seeds = r_seeds;
            return run_report(r_tweets, r_banks, messages, rosters, snapshots, seeds, r_out_dir,
                              r_strict, r_thresholds.detection, r_trend,
                              resolve_workers(r_workers), r_offset);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
