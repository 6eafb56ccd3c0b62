#include "trendforge/matching.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "trendforge/corpus.hpp"
#include "trendforge/unicode.hpp"

namespace trendforge {

using json = nlohmann::json;

std::string tier_name(const MatchTier& tier) {
    switch (tier.kind) {
        case TierKind::Exact: return "exact";
        case TierKind::Spaceless: return "spaceless";
        default: return "fuzzy";
    }
}

std::optional<MatchTier> tier_from_name(std::string_view name, int distance) {
    if (name == "exact") return MatchTier{TierKind::Exact, 0};
    if (name == "spaceless") return MatchTier{TierKind::Spaceless, 0};
    if (name == "fuzzy") {
        if (distance < 1 || distance > kFuzzyBound) return std::nullopt;
        return MatchTier{TierKind::Fuzzy, distance};
    }
    return std::nullopt;
}

std::optional<int> edit_distance_bounded(std::u32string_view a, std::u32string_view b, int bound) {
    if (bound < 0) return std::nullopt;
    if (a.size() > b.size()) std::swap(a, b);
    const size_t k = static_cast<size_t>(bound);
    if (a.size() + k < b.size()) return std::nullopt;

    // dp[d] is the distance between a[:i] and b[:i + d - k]; only the band of
    // diagonals |j - i| <= k can stay within the bound.
    const size_t width = 2 * k + 1;
    const int kInfinity = bound + 1;
    std::vector<int> dp(width, kInfinity);
    std::iota(dp.begin() + static_cast<ptrdiff_t>(k), dp.end(), 0);

    for (size_t i = 0; i < a.size(); ++i) {
        int row_min = kInfinity;
        for (size_t d = 0; d < width; ++d) {
            if (i + d < k || i + d >= b.size() + k) {
                dp[d] = (i + d + 1 == k) ? static_cast<int>(i) + 1 : kInfinity;
                row_min = std::min(row_min, dp[d]);
                continue;
            }
            const size_t j = i + d - k;
            if (a[i] != b[j]) {
                const int replace = dp[d];
                const int remove = d + 1 < width ? dp[d + 1] : kInfinity;
                const int insert = d > 0 ? dp[d - 1] : kInfinity;
                dp[d] = std::min({replace, remove, insert});
                if (dp[d] < kInfinity) dp[d] += 1;
            }
            row_min = std::min(row_min, dp[d]);
        }
        if (row_min > bound) return std::nullopt;
    }
    int result = dp[b.size() - a.size() + k];
    if (result > bound) return std::nullopt;
    return result;
}

std::optional<int> edit_distance_bounded(std::string_view a, std::string_view b, int bound) {
    return edit_distance_bounded(decode_utf8(a), decode_utf8(b), bound);
}

namespace {

std::array<uint16_t, 64> hashed_histogram(const std::u32string& cps) {
    std::array<uint16_t, 64> hist{};
    for (char32_t c : cps) {
        uint32_t h = static_cast<uint32_t>(c) * 2654435761u;
        ++hist[(h >> 26) & 63u];
    }
    return hist;
}

// Half the L1 histogram distance lower-bounds the edit distance; hashing
// into bins only shrinks it, so the filter stays sound.
bool histogram_may_match(const std::array<uint16_t, 64>& a, const std::array<uint16_t, 64>& b,
                         int bound) {
    int l1 = 0;
    for (size_t i = 0; i < 64; ++i) {
        int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        l1 += d < 0 ? -d : d;
    }
    return l1 <= 2 * bound;
}

}  // namespace

TemplateIndex build_index(std::span<const TemplateBank> banks, const NormalizeOptions& opts) {
    TemplateIndex index;
    for (uint32_t bank_order = 0; bank_order < banks.size(); ++bank_order) {
        const TemplateBank& bank = banks[bank_order];
        auto norms = normalize_bank(bank, opts);
        for (const BankNormEntry& n : norms) {
            if (!n.usable) continue;
            TemplateEntry entry;
            entry.bank_id = bank.bank_id;
            entry.bank_order = bank_order;
            entry.template_index = n.template_index;
            entry.form = n.form;
            entry.canonical_cps = decode_utf8(n.form.canonical);
            entry.histogram = hashed_histogram(entry.canonical_cps);
            index.entries.push_back(std::move(entry));
        }
    }
    // Entry ids in (bank_id, template_index) order double as the tie-break
    // order everywhere downstream.
    std::sort(index.entries.begin(), index.entries.end(),
              [](const TemplateEntry& a, const TemplateEntry& b) {
                  if (a.bank_id != b.bank_id) return a.bank_id < b.bank_id;
                  return a.template_index < b.template_index;
              });
    for (uint32_t id = 0; id < index.entries.size(); ++id) {
        const TemplateEntry& e = index.entries[id];
        index.exact_lookup[e.form.canonical].push_back(id);
        index.spaceless_lookup[e.form.spaceless].push_back(id);
        index.length_buckets[e.form.char_len].push_back(id);
    }
    return index;
}

std::vector<BankMatch> match_form(const NormalForm& form, const TemplateIndex& index) {
    std::vector<BankMatch> best;  // keyed by bank_order, small
    auto offer = [&](uint32_t entry_id, MatchTier tier) {
        uint32_t bank_order = index.entries[entry_id].bank_order;
        for (BankMatch& m : best) {
            if (index.entries[m.entry_id].bank_order != bank_order) continue;
            int old_rank = m.tier.rank();
            int new_rank = tier.rank();
            if (new_rank < old_rank || (new_rank == old_rank && entry_id < m.entry_id)) {
                m.entry_id = entry_id;
                m.tier = tier;
            }
            return;
        }
        best.push_back({entry_id, tier});
    };

    if (form.char_len >= kExactMinChars) {
        if (auto it = index.exact_lookup.find(form.canonical); it != index.exact_lookup.end()) {
            for (uint32_t id : it->second) offer(id, MatchTier{TierKind::Exact, 0});
        }
        if (auto it = index.spaceless_lookup.find(form.spaceless);
            it != index.spaceless_lookup.end()) {
            for (uint32_t id : it->second) offer(id, MatchTier{TierKind::Spaceless, 0});
        }
    }
    if (form.char_len >= kFuzzyMinChars && !index.length_buckets.empty()) {
        std::u32string cps = decode_utf8(form.canonical);
        auto hist = hashed_histogram(cps);
        uint32_t lo = form.char_len >= kFuzzyBound ? form.char_len - kFuzzyBound : 0;
        uint32_t hi = form.char_len + kFuzzyBound;
        for (uint32_t len = lo; len <= hi; ++len) {
            auto it = index.length_buckets.find(len);
            if (it == index.length_buckets.end()) continue;
            for (uint32_t id : it->second) {
                const TemplateEntry& e = index.entries[id];
                if (!histogram_may_match(hist, e.histogram, kFuzzyBound)) continue;
                auto d = edit_distance_bounded(cps, e.canonical_cps, kFuzzyBound);
                if (!d || *d == 0) continue;  // equality is the exact tier's job
                offer(id, MatchTier{TierKind::Fuzzy, *d});
            }
        }
    }
    std::sort(best.begin(), best.end(),
              [](const BankMatch& a, const BankMatch& b) { return a.entry_id < b.entry_id; });
    return best;
}

namespace {

MatchRecord to_record(const Tweet& tweet, const TemplateIndex& index, const BankMatch& m) {
    MatchRecord rec;
    rec.tweet_id = tweet.tweet_id;
    rec.bank_id = index.entries[m.entry_id].bank_id;
    rec.template_index = index.entries[m.entry_id].template_index;
    rec.tier = m.tier;
    rec.matched_at = tweet.created_at;
    rec.is_retweet = tweet.retweet();
    return rec;
}

}  // namespace

std::optional<MatchRecord> match_tweet(const Tweet& tweet, const TemplateIndex& index,
                                       const NormalizeOptions& opts) {
    NormalForm form = normalize(tweet.raw_text, opts);
    std::vector<BankMatch> matches = match_form(form, index);
    if (matches.empty()) return std::nullopt;
    const BankMatch* best = &matches.front();
    for (const BankMatch& m : matches) {
        if (m.tier.rank() < best->tier.rank() ||
            (m.tier.rank() == best->tier.rank() && m.entry_id < best->entry_id)) {
            best = &m;
        }
    }
    return to_record(tweet, index, *best);
}

MatchOutput match_corpus(const Corpus& corpus, const TemplateIndex& index, unsigned workers,
                         const NormalizeOptions& opts) {
    MatchOutput out;
    const size_t n = corpus.tweets.size();
    if (workers < 1) workers = 1;

    auto run_range = [&](size_t begin, size_t end, std::vector<MatchRecord>& sink) {
        for (size_t i = begin; i < end; ++i) {
            const Tweet& tweet = corpus.tweets[i];
            NormalForm form = normalize(tweet.raw_text, opts);
            for (const BankMatch& m : match_form(form, index)) {
                sink.push_back(to_record(tweet, index, m));
            }
        }
    };

    if (workers == 1 || n < 2048) {
        run_range(0, n, out.records);
    } else {
        std::vector<std::vector<MatchRecord>> parts(workers);
        std::vector<std::thread> pool;
        size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            size_t begin = std::min(n, w * chunk);
            size_t end = std::min(n, begin + chunk);
            pool.emplace_back(run_range, begin, end, std::ref(parts[w]));
        }
        for (auto& t : pool) t.join();
        size_t total = 0;
        for (const auto& p : parts) total += p.size();
        out.records.reserve(total);
        for (auto& p : parts)
            std::move(p.begin(), p.end(), std::back_inserter(out.records));
    }

    std::sort(out.records.begin(), out.records.end(),
              [](const MatchRecord& a, const MatchRecord& b) {
                  if (a.tweet_id != b.tweet_id) return a.tweet_id < b.tweet_id;
                  if (a.bank_id != b.bank_id) return a.bank_id < b.bank_id;
                  return a.template_index < b.template_index;
              });

    for (const MatchRecord& r : out.records) {
        switch (r.tier.kind) {
            case TierKind::Exact: out.stats.exact++; break;
            case TierKind::Spaceless: out.stats.spaceless++; break;
            case TierKind::Fuzzy: out.stats.fuzzy[static_cast<size_t>(r.tier.distance)]++; break;
        }
    }
    return out;
}

std::string match_record_to_json_line(const MatchRecord& r) {
    json j;
    j["tweet_id"] = r.tweet_id;
    j["bank_id"] = r.bank_id;
    j["template_index"] = r.template_index;
    j["tier"] = tier_name(r.tier);
    j["distance"] = r.tier.distance;
    j["is_retweet"] = r.is_retweet;
    j["created_at"] = format_rfc3339(r.matched_at);
    return j.dump();
}

std::vector<MatchRecord> load_match_records_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::vector<MatchRecord> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed record");
        MatchRecord r;
        r.tweet_id = j.value("tweet_id", "");
        r.bank_id = j.value("bank_id", "");
        r.template_index = j.value("template_index", 0u);
        auto tier = tier_from_name(j.value("tier", ""), j.value("distance", 0));
        if (!tier)
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed tier");
        r.tier = *tier;
        r.is_retweet = j.value("is_retweet", false);
        auto ts = parse_rfc3339(j.value("created_at", ""));
        if (!ts)
            throw InputError(path.string() + " line " + std::to_string(line_no) +
                             ": malformed created_at");
        r.matched_at = *ts;
        out.push_back(std::move(r));
    }
    return out;
}

void write_match_records_file(std::span<const MatchRecord> records,
                              const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const MatchRecord& r : records) out << match_record_to_json_line(r) << '\n';
}

}  // namespace trendforge
