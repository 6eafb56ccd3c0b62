#include "trendforge/syngen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "trendforge/corpus.hpp"
#include "trendforge/matching.hpp"
#include "trendforge/textnorm.hpp"

namespace trendforge {

using json = nlohmann::json;

std::string perturbation_name(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::AppendHashtag: return "append-hashtag";
        case PerturbationKind::AppendMention: return "append-mention";
        case PerturbationKind::PunctuationChange: return "punctuation-change";
        case PerturbationKind::SingleWordSwap: return "single-word-swap";
    }
    return "append-hashtag";
}

std::optional<PerturbationKind> perturbation_from_name(std::string_view name) {
    if (name == "append-hashtag") return PerturbationKind::AppendHashtag;
    if (name == "append-mention") return PerturbationKind::AppendMention;
    if (name == "punctuation-change") return PerturbationKind::PunctuationChange;
    if (name == "single-word-swap") return PerturbationKind::SingleWordSwap;
    return std::nullopt;
}

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Independent deterministic stream per (seed, tag, n); generation order and
// parallelism cannot perturb the output.
std::mt19937_64 make_stream(uint64_t seed, std::string_view tag, uint64_t n) {
    uint64_t h = seed ^ 0x6A09E667F3BCC909ull;
    for (char c : tag) h = splitmix64(h ^ static_cast<unsigned char>(c));
    return std::mt19937_64(splitmix64(h ^ n));
}

double uniform01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

const char* kCities[50] = {
    "mumbai",     "delhi",      "bangalore", "hyderabad", "ahmedabad", "chennai",
    "kolkata",    "surat",      "pune",      "jaipur",    "lucknow",   "kanpur",
    "nagpur",     "indore",     "thane",     "bhopal",    "visakhapatnam", "patna",
    "vadodara",   "ghaziabad",  "ludhiana",  "agra",      "nashik",    "faridabad",
    "meerut",     "rajkot",     "varanasi",  "srinagar",  "aurangabad", "dhanbad",
    "amritsar",   "navimumbai", "allahabad", "ranchi",    "howrah",    "coimbatore",
    "jabalpur",   "gwalior",    "vijayawada", "jodhpur",  "madurai",   "raipur",
    "kota",       "guwahati",   "chandigarh", "solapur",  "hubli",     "mysore",
    "tiruchirappalli", "bareilly"};

const char* kDevanagariWords[] = {
    "मोदी",  "भारत",   "सरकार",  "देश",    "जनता",  "विकास", "योजना", "समर्थन",
    "नेता",  "चुनाव",  "वोट",    "जीत",    "राष्ट्र", "सेना",   "किसान", "युवा",
    "शक्ति", "प्रगति",  "गौरव",   "अभियान", "संकल्प", "नई",    "दिशा",  "आगे"};

const char* kSyllables[] = {"ba", "de", "ki", "lo", "mu", "na", "pa", "ra", "sa", "ta",
                            "ve", "wi", "ya", "zo", "chi", "dha", "gar", "jan", "kar", "mal",
                            "nir", "pra", "sam", "tan", "vik", "van"};

struct Vocabulary {
    std::vector<std::string> words;
    std::vector<double> cumulative;  // Zipf weights

    const std::string& sample(std::mt19937_64& rng) const {
        double u = uniform01(rng) * cumulative.back();
        size_t i = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                   cumulative.begin();
        if (i >= words.size()) i = words.size() - 1;
        return words[i];
    }
};

Vocabulary build_vocabulary(uint32_t size) {
    Vocabulary v;
    v.words.reserve(size);
    constexpr size_t n_syl = std::size(kSyllables);
    for (uint32_t i = 0; i < size; ++i) {
        uint64_t h = splitmix64(0x51ED270B + i);
        int parts = 2 + static_cast<int>(h % 3);
        std::string w;
        for (int p = 0; p < parts; ++p) {
            h = splitmix64(h);
            w += kSyllables[h % n_syl];
        }
        v.words.push_back(std::move(w));
    }
    v.cumulative.reserve(size);
    double total = 0.0;
    for (uint32_t i = 0; i < size; ++i) {
        total += 1.0 / std::pow(double(i + 1), 1.05);
        v.cumulative.push_back(total);
    }
    return v;
}

std::string number_token(std::mt19937_64& rng) {
    static const char* kUnits[] = {"", " cr", " lakh", "%", "000"};
    uint64_t value = 2 + std::uniform_int_distribution<uint64_t>(0, 8497)(rng);
    return std::to_string(value) + kUnits[std::uniform_int_distribution<size_t>(0, 4)(rng)];
}

std::string capitalize(std::string w) {
    if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] -= 32;
    return w;
}

std::string sentence(std::mt19937_64& rng, const Vocabulary& vocab, int min_words, int max_words,
                     double devanagari_rate, double digit_prob) {
    int n = std::uniform_int_distribution<int>(min_words, max_words)(rng);
    std::string text;
    bool want_digit = uniform01(rng) < digit_prob;
    int digit_pos = want_digit ? std::uniform_int_distribution<int>(1, n - 1)(rng) : -1;
    for (int i = 0; i < n; ++i) {
        if (i > 0) text += ' ';
        if (i == digit_pos) {
            text += number_token(rng);
            continue;
        }
        if (devanagari_rate > 0 && uniform01(rng) < devanagari_rate) {
            text += kDevanagariWords[std::uniform_int_distribution<size_t>(
                0, std::size(kDevanagariWords) - 1)(rng)];
            continue;
        }
        std::string w = vocab.sample(rng);
        if (i == 0 || uniform01(rng) < 0.08) w = capitalize(std::move(w));
        text += w;
    }
    double tail = uniform01(rng);
    if (tail < 0.45)
        text += '.';
    else if (tail < 0.6)
        text += '!';
    return text;
}

// Display form of a hashtag for raw text ("#CampaignTag" style).
std::string display_tag(const std::string& tag) {
    std::string out = tag;
    if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] -= 32;
    return "#" + out;
}

struct RampSampler {
    TimeMs trickle_start = 0;
    double trickle_minutes = 0, trickle_mass = 0;
    TimeMs ramp_start = 0;
    double ramp_minutes = 0, ramp_mass = 0;
    TimeMs peak_at = 0;
    double half_life = 1, decay_cutoff = 0, decay_mass = 0;
    double total_mass = 0;

    explicit RampSampler(const CampaignSpec& spec) {
        const RampSpec& r = spec.ramp;
        ramp_start = spec.launch_at - TimeMs(r.burst_lead_minutes) * kMsPerMinute;
        trickle_minutes = r.trickle_minutes;
        trickle_start = ramp_start - TimeMs(r.trickle_minutes) * kMsPerMinute;
        trickle_mass = r.trickle_rate_per_min * trickle_minutes;
        ramp_minutes = r.ramp_minutes;
        ramp_mass = r.burst_rate_per_min * ramp_minutes / 2.0;
        peak_at = ramp_start + TimeMs(r.ramp_minutes) * kMsPerMinute;
        half_life = std::max(1.0, r.decay_half_life_min);
        decay_cutoff = r.decay_cutoff_minutes;
        decay_mass = r.burst_rate_per_min * (half_life / std::log(2.0)) *
                     (1.0 - std::exp2(-decay_cutoff / half_life));
        total_mass = trickle_mass + ramp_mass + decay_mass;
    }

    TimeMs sample(std::mt19937_64& rng) const {
        double u = uniform01(rng) * total_mass;
        double minutes;
        TimeMs base;
        if (u < trickle_mass && trickle_mass > 0) {
            base = trickle_start;
            minutes = (u / trickle_mass) * trickle_minutes;
        } else if (u < trickle_mass + ramp_mass && ramp_mass > 0) {
            base = ramp_start;
            minutes = ramp_minutes * std::sqrt((u - trickle_mass) / ramp_mass);
        } else {
            base = peak_at;
            double v = decay_mass > 0 ? (u - trickle_mass - ramp_mass) / decay_mass : 0.0;
            double reach = 1.0 - std::exp2(-decay_cutoff / half_life);
            minutes = -half_life * std::log2(std::max(1e-12, 1.0 - v * reach));
        }
        return base + TimeMs(std::llround(minutes * double(kMsPerMinute)));
    }
};

struct Builder {
    const SynthConfig& cfg;
    Vocabulary vocab;
    std::vector<std::string> city_tags;
    std::vector<double> city_cumulative;
    std::vector<std::string> supporters;
    std::vector<double> supporter_cumulative;
    std::vector<std::string> organic_authors;

    std::vector<Tweet> tweets;
    std::vector<TweetTruth> tweet_truth;
    std::unordered_map<std::string, std::vector<std::string>> banks_by_author;
    uint64_t next_id = 0;

    explicit Builder(const SynthConfig& config) : cfg(config) {
        vocab = build_vocabulary(std::max<uint32_t>(64, config.organic.vocabulary_size));
        int n_cities = std::clamp(config.organic.n_city_hashtags, 0, 50);
        double total = 0.0;
        for (int i = 0; i < n_cities; ++i) {
            city_tags.push_back(kCities[i]);
            total += 1.0 / std::pow(double(i + 1), 0.3);
            city_cumulative.push_back(total);
        }
        supporters.reserve(config.supporter_pool);
        total = 0.0;
        for (uint32_t i = 0; i < config.supporter_pool; ++i) {
            char buf[24];
            std::snprintf(buf, sizeof buf, "s%05u", i);
            supporters.emplace_back(buf);
            total += 1.0 / std::pow(double(i + 1), config.supporter_zipf_exponent);
            supporter_cumulative.push_back(total);
        }
        organic_authors.reserve(config.organic.n_authors);
        for (uint64_t i = 0; i < config.organic.n_authors; ++i) {
            char buf[24];
            std::snprintf(buf, sizeof buf, "u%06llu", static_cast<unsigned long long>(i));
            organic_authors.emplace_back(buf);
        }
    }

    std::string fresh_id() {
        char buf[24];
        std::snprintf(buf, sizeof buf, "t%09llu", static_cast<unsigned long long>(next_id++));
        return buf;
    }

    const std::string& sample_city(std::mt19937_64& rng) {
        double u = uniform01(rng) * city_cumulative.back();
        size_t i = std::upper_bound(city_cumulative.begin(), city_cumulative.end(), u) -
                   city_cumulative.begin();
        return city_tags[std::min(i, city_tags.size() - 1)];
    }

    const std::string& sample_organic_author(std::mt19937_64& rng) {
        size_t i = std::uniform_int_distribution<size_t>(0, organic_authors.size() - 1)(rng);
        return organic_authors[i];
    }

    std::vector<std::string> sample_participants(std::mt19937_64& rng, size_t n) {
        std::unordered_set<size_t> chosen;
        std::vector<std::string> out;
        n = std::min(n, supporters.size());
        out.reserve(n);
        while (out.size() < n) {
            double u = uniform01(rng) * supporter_cumulative.back();
            size_t i = std::upper_bound(supporter_cumulative.begin(), supporter_cumulative.end(),
                                        u) -
                       supporter_cumulative.begin();
            i = std::min(i, supporters.size() - 1);
            if (chosen.insert(i).second) out.push_back(supporters[i]);
        }
        return out;
    }

    // truth.is_retweet is set by the caller: the corpus flag may be left
    // absent on purpose so ingestion exercises prefix inference.
    size_t add_tweet(Tweet tweet, TweetTruth truth) {
        truth.tweet_id = tweet.tweet_id;
        tweets.push_back(std::move(tweet));
        tweet_truth.push_back(std::move(truth));
        return tweets.size() - 1;
    }
};

struct PerturbResult {
    std::string text;
    std::vector<std::string> extra_hashtags;
    PerturbationKind kind;
};

PerturbResult perturb(std::mt19937_64& rng, const Vocabulary& vocab, const std::string& original,
                      const CampaignSpec& spec) {
    PerturbResult out;
    const auto& kinds = spec.perturbation_kinds;
    out.kind = kinds[std::uniform_int_distribution<size_t>(0, kinds.size() - 1)(rng)];
    out.text = original;
    switch (out.kind) {
        case PerturbationKind::AppendHashtag: {
            static const char* kSuffixes[] = {"now", "today", "2019", "india", "jai"};
            std::string side =
                spec.hashtag + kSuffixes[std::uniform_int_distribution<size_t>(0, 4)(rng)];
            out.text += " " + display_tag(side);
            out.extra_hashtags.push_back(side);
            break;
        }
        case PerturbationKind::AppendMention: {
            static const char* kMentions[] = {"narendramodi", "bjp4india", "pmoindia",
                                              "amitshah"};
            out.text += " @";
            out.text += kMentions[std::uniform_int_distribution<size_t>(0, 3)(rng)];
            break;
        }
        case PerturbationKind::PunctuationChange: {
            size_t dot = out.text.find('.');
            if (dot != std::string::npos)
                out.text[dot] = '!';
            else
                out.text += "!!";
            break;
        }
        case PerturbationKind::SingleWordSwap: {
            // Swap one plain word; sigil tokens keep the campaign linkage.
            std::vector<std::pair<size_t, size_t>> word_spans;
            size_t i = 0;
            while (i < out.text.size()) {
                while (i < out.text.size() && out.text[i] == ' ') ++i;
                size_t start = i;
                while (i < out.text.size() && out.text[i] != ' ') ++i;
                if (i > start && out.text[start] != '#' && out.text[start] != '@')
                    word_spans.emplace_back(start, i - start);
            }
            if (!word_spans.empty()) {
                auto [pos, len] = word_spans[std::uniform_int_distribution<size_t>(
                    0, word_spans.size() - 1)(rng)];
                out.text.replace(pos, len, vocab.sample(rng));
            }
            break;
        }
    }
    return out;
}

TemplateBank generate_bank(Builder& b, const CampaignSpec& spec, uint32_t campaign_idx) {
    auto rng_text = make_stream(b.cfg.seed, "campaign-text", campaign_idx);
    TemplateBank bank;
    char buf[24];
    std::snprintf(buf, sizeof buf, "bank%03u", campaign_idx);
    bank.bank_id = buf;
    bank.campaign_hashtag = spec.hashtag;
    bank.launch_at = spec.launch_at;
    bank.templates.reserve(spec.n_templates);
    // Most templates cite a number, as real banks do.
    for (int i = 0; i < spec.n_templates; ++i) {
        std::string body = sentence(rng_text, b.vocab, 10, 18, 0.02, 0.6);
        bank.templates.push_back(body + " " + display_tag(spec.hashtag));
    }
    return bank;
}

void generate_campaign(Builder& b, const CampaignSpec& spec, const TemplateBank& bank,
                       uint32_t campaign_idx) {
    const std::string& bank_id = bank.bank_id;
    const std::vector<std::string>& templates = bank.templates;

    auto rng_shape = make_stream(b.cfg.seed, "campaign-shape", campaign_idx);
    auto rng_chatter = make_stream(b.cfg.seed, "campaign-chatter", campaign_idx);
    auto rng_posts = make_stream(b.cfg.seed, "campaign-posts", campaign_idx);
    auto rng_times = make_stream(b.cfg.seed, "campaign-times", campaign_idx);

    // Participant head count: configured, or log-normal around a mean of 141.
    size_t n_participants = spec.n_participants;
    if (n_participants == 0) {
        // The floor keeps default campaigns above the evaluation volume gate,
        // as every campaign in the measured data was.
        double sigma = 0.5;
        double mu = std::log(141.0) - sigma * sigma / 2.0;
        double draw = std::exp(std::normal_distribution<double>(mu, sigma)(rng_shape));
        n_participants = static_cast<size_t>(std::clamp(draw, 60.0, 600.0));
    }
    std::vector<std::string> participants = b.sample_participants(rng_shape, n_participants);
    for (const std::string& p : participants) b.banks_by_author[p].push_back(bank_id);

    // Posting plan: who posts which templates.
    struct PlannedPost {
        size_t participant;
        uint32_t template_index;
    };
    std::vector<PlannedPost> plan;
    double post_lambda = std::max(0.0, spec.posts_per_participant_mean - 1.0);
    for (size_t p = 0; p < participants.size(); ++p) {
        int k = 1 + std::poisson_distribution<int>(post_lambda)(rng_posts);
        k = std::min<int>(k, spec.n_templates);
        std::unordered_set<uint32_t> used;
        for (int j = 0; j < k; ++j) {
            uint32_t t;
            do {
                t = std::uniform_int_distribution<uint32_t>(0, spec.n_templates - 1)(rng_posts);
            } while (!used.insert(t).second);
            plan.push_back({p, t});
        }
    }

    const uint64_t template_posts = plan.size();
    uint64_t chatter_count, retweet_count;
    if (spec.total_tweets) {
        uint64_t total = std::max<uint64_t>(*spec.total_tweets, template_posts);
        double originals = double(total) / (1.0 + spec.retweet_multiplier);
        chatter_count = originals > double(template_posts)
                            ? static_cast<uint64_t>(originals) - template_posts
                            : 0;
        retweet_count = total - template_posts - chatter_count;
    } else {
        chatter_count = static_cast<uint64_t>(std::llround(spec.chatter_per_original *
                                                           double(template_posts)));
        retweet_count = static_cast<uint64_t>(
            std::llround(spec.retweet_multiplier * double(template_posts + chatter_count)));
    }

    RampSampler ramp(spec);

    // Originals first (template posts, then chatter), sorted by timestamp so
    // retweets can reference an earlier original.
    struct Original {
        TimeMs at;
        std::string text;
        std::vector<std::string> hashtags;
        std::string author;
        bool is_template = false;
        uint32_t template_index = 0;
        bool perturbed = false;
        PerturbationKind kind = PerturbationKind::AppendHashtag;
    };
    std::vector<Original> originals;
    originals.reserve(template_posts + chatter_count);

    NormalizeOptions norm_opts;
    std::vector<NormalForm> template_norms;
    template_norms.reserve(templates.size());
    for (const std::string& t : templates) template_norms.push_back(normalize(t, norm_opts));

    for (const PlannedPost& pp : plan) {
        Original o;
        o.at = ramp.sample(rng_times);
        o.author = participants[pp.participant];
        o.is_template = true;
        o.template_index = pp.template_index;
        o.hashtags.push_back(spec.hashtag);
        if (uniform01(rng_posts) < spec.perturbation_rate && !spec.perturbation_kinds.empty()) {
            PerturbResult pr = perturb(rng_posts, b.vocab, templates[pp.template_index], spec);
            o.text = std::move(pr.text);
            o.perturbed = true;
            o.kind = pr.kind;
            for (std::string& tag : pr.extra_hashtags) o.hashtags.push_back(std::move(tag));
        } else {
            o.text = templates[pp.template_index];
        }
        originals.push_back(std::move(o));
    }
    for (uint64_t i = 0; i < chatter_count; ++i) {
        Original o;
        o.at = ramp.sample(rng_times);
        o.author = b.sample_organic_author(rng_posts);
        o.text = sentence(rng_chatter, b.vocab, 5, 14, 0.05, 0.1) + " " + display_tag(spec.hashtag);
        o.hashtags.push_back(spec.hashtag);
        originals.push_back(std::move(o));
    }
    std::sort(originals.begin(), originals.end(), [](const Original& a, const Original& b) {
        return a.at < b.at;
    });

    std::vector<TimeMs> original_times;
    std::vector<size_t> original_tweet_index;
    original_times.reserve(originals.size());
    original_tweet_index.reserve(originals.size());

    for (const Original& o : originals) {
        Tweet t;
        t.tweet_id = b.fresh_id();
        t.author_id = o.author;
        t.created_at = o.at;
        t.raw_text = o.text;
        t.hashtags = o.hashtags;
        if (uniform01(rng_posts) < 0.3) t.is_retweet = false;  // else left absent

        TweetTruth truth;
        if (o.is_template) {
            truth.campaign = true;
            truth.bank_id = bank_id;
            truth.template_index = o.template_index;
            truth.perturbed = o.perturbed;
            if (o.perturbed) {
                truth.perturbation = perturbation_name(o.kind);
                NormalForm nf = normalize(o.text, norm_opts);
                truth.exceeds_fuzzy =
                    !edit_distance_bounded(nf.canonical,
                                           template_norms[o.template_index].canonical,
                                           kFuzzyBound)
                         .has_value();
            }
        }
        original_times.push_back(o.at);
        original_tweet_index.push_back(b.add_tweet(std::move(t), std::move(truth)));
    }

    // Retweets sample the same shape; each references the latest original
    // posted before it.
    for (uint64_t i = 0; i < retweet_count && !originals.empty(); ++i) {
        TimeMs at = ramp.sample(rng_times);
        auto it = std::upper_bound(original_times.begin(), original_times.end(), at);
        size_t pick;
        if (it == original_times.begin()) {
            pick = 0;
            at = original_times.front() + 1000;
        } else {
            pick = static_cast<size_t>(it - original_times.begin()) - 1;
        }
        const Tweet& orig = b.tweets[original_tweet_index[pick]];
        const TweetTruth& orig_truth = b.tweet_truth[original_tweet_index[pick]];

        Tweet t;
        t.tweet_id = b.fresh_id();
        t.author_id = b.sample_organic_author(rng_posts);
        t.created_at = at;
        t.raw_text = "RT @" + orig.author_id + ": " + orig.raw_text;
        t.hashtags = orig.hashtags;
        if (uniform01(rng_posts) < 0.6) t.is_retweet = true;  // else inferred from the prefix
        t.retweet_of = orig.tweet_id;

        TweetTruth truth = orig_truth;
        truth.tweet_id.clear();
        truth.is_retweet = true;
        b.add_tweet(std::move(t), std::move(truth));
    }

    // A slice of participants also posts ordinary city chatter, so organic
    // hashtags carry seed users through the evaluation gate.
    auto rng_city = make_stream(b.cfg.seed, "campaign-city", campaign_idx);
    if (!b.city_tags.empty() && b.cfg.organic.span_end > b.cfg.organic.span_start) {
        for (const std::string& p : participants) {
            if (uniform01(rng_city) >= 0.5) continue;
            Tweet t;
            t.tweet_id = b.fresh_id();
            t.author_id = p;
            t.created_at = b.cfg.organic.span_start +
                           TimeMs(uniform01(rng_city) *
                                  double(b.cfg.organic.span_end - b.cfg.organic.span_start));
            const std::string& city = b.sample_city(rng_city);
            t.raw_text = sentence(rng_city, b.vocab, 6, 14, 0.05, 0.1) + " " + display_tag(city);
            t.hashtags.push_back(city);
            b.add_tweet(std::move(t), TweetTruth{});
        }
    }
}

void generate_organic(Builder& b) {
    const OrganicSpec& spec = b.cfg.organic;
    auto rng = make_stream(b.cfg.seed, "organic", 0);
    if (spec.span_end <= spec.span_start || spec.n_tweets == 0 || b.organic_authors.empty())
        return;

    struct OrganicOriginal {
        size_t tweet_index;
        TimeMs at;
    };
    std::vector<OrganicOriginal> recent;

    uint64_t n_retweets = static_cast<uint64_t>(double(spec.n_tweets) * spec.retweet_rate);
    uint64_t n_originals = spec.n_tweets - n_retweets;

    for (uint64_t i = 0; i < n_originals; ++i) {
        Tweet t;
        t.tweet_id = b.fresh_id();
        t.author_id = b.sample_organic_author(rng);
        t.created_at =
            spec.span_start + TimeMs(uniform01(rng) * double(spec.span_end - spec.span_start));
        t.raw_text = sentence(rng, b.vocab, 3, 14, spec.devanagari_rate, 0.15);
        if (!b.city_tags.empty() && uniform01(rng) < spec.city_hashtag_rate) {
            const std::string& city = b.sample_city(rng);
            t.raw_text += " " + display_tag(city);
            t.hashtags.push_back(city);
        } else if (uniform01(rng) < 0.3) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "tag%03d",
                          std::uniform_int_distribution<int>(0, 199)(rng));
            t.raw_text += " " + display_tag(buf);
            t.hashtags.emplace_back(buf);
        }
        TimeMs at = t.created_at;
        size_t idx = b.add_tweet(std::move(t), TweetTruth{});
        if (recent.size() < 4096)
            recent.push_back({idx, at});
        else
            recent[std::uniform_int_distribution<size_t>(0, recent.size() - 1)(rng)] = {idx, at};
    }
    for (uint64_t i = 0; i < n_retweets && !recent.empty(); ++i) {
        const OrganicOriginal& src = recent[std::uniform_int_distribution<size_t>(
            0, recent.size() - 1)(rng)];
        const Tweet& orig = b.tweets[src.tweet_index];
        Tweet t;
        t.tweet_id = b.fresh_id();
        t.author_id = b.sample_organic_author(rng);
        t.created_at = src.at + TimeMs(1000.0 + uniform01(rng) * double(6 * kMsPerHour));
        t.raw_text = "RT @" + orig.author_id + ": " + orig.raw_text;
        t.hashtags = orig.hashtags;
        if (uniform01(rng) < 0.6) t.is_retweet = true;
        t.retweet_of = orig.tweet_id;
        TweetTruth truth;
        truth.is_retweet = true;
        b.add_tweet(std::move(t), truth);
    }
}

void generate_group_fixtures(Builder& b, SynthResult& result) {
    auto rng = make_stream(b.cfg.seed, "groups", 0);
    if (b.cfg.campaigns.empty()) return;

    const int n_groups = std::clamp<int>(int(b.cfg.campaigns.size()), 4, 24);
    std::vector<std::string> group_ids;
    for (int g = 0; g < n_groups; ++g) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "g%03d", g);
        group_ids.emplace_back(buf);
        GroupRoster roster;
        roster.group_id = buf;
        size_t members = 20 + std::uniform_int_distribution<size_t>(0, 60)(rng);
        std::unordered_set<std::string> chosen;
        for (size_t m = 0; m < members; ++m) {
            const std::string& who =
                uniform01(rng) < 0.5 ? b.supporters[std::uniform_int_distribution<size_t>(
                                           0, b.supporters.size() - 1)(rng)]
                                     : b.sample_organic_author(rng);
            if (chosen.insert(who).second) roster.member_ids.push_back(who);
        }
        std::sort(roster.member_ids.begin(), roster.member_ids.end());
        size_t admins = 1 + std::uniform_int_distribution<size_t>(0, 4)(rng);
        for (size_t a = 0; a < std::min(admins, roster.member_ids.size()); ++a)
            roster.admin_ids.push_back(roster.member_ids[a]);
        result.rosters.push_back(std::move(roster));
    }

    static const char* kMonthNames[12] = {"January", "February", "March",     "April",
                                          "May",     "June",     "July",      "August",
                                          "September", "October", "November", "December"};
    for (size_t c = 0; c < b.cfg.campaigns.size(); ++c) {
        const CampaignSpec& spec = b.cfg.campaigns[c];
        CivilDateTime launch = civil_at_offset(spec.launch_at, kDefaultDisplayOffsetMin);
        char sender_buf[24];
        // Every fifth alert comes from the same broadcaster, whose
        // millisecond-spaced cross-group posts mark automation.
        bool bot = c % 5 == 0;
        if (bot)
            std::snprintf(sender_buf, sizeof sender_buf, "+910000042042");
        else
            std::snprintf(sender_buf, sizeof sender_buf, "+9190000%05zu", c);

        std::string text = "Trend Alert: " + display_tag(spec.hashtag) + " Date: " +
                           std::to_string(launch.day) + "th " + kMonthNames[launch.month - 1] +
                           ", " + std::to_string(launch.year) + " Time: " +
                           std::to_string(launch.hour > 12 ? launch.hour - 12 : launch.hour) +
                           (launch.hour >= 12 ? " p.m." : " a.m.") +
                           " https://docs.google.com/document/d/bank" + std::to_string(c) +
                           " Let's trend " + display_tag(spec.hashtag) + "!";
        TimeMs first_at = spec.launch_at - kMsPerDay +
                          TimeMs(uniform01(rng) * double(2 * kMsPerHour));
        int copies = 2 + std::uniform_int_distribution<int>(0, 2)(rng);
        for (int k = 0; k < copies; ++k) {
            GroupMessage m;
            m.group_id = group_ids[(c + k) % group_ids.size()];
            m.sender_id = sender_buf;
            m.sent_at = bot ? first_at + k * 40
                            : first_at + TimeMs(k) * (5 * kMsPerMinute) +
                                  TimeMs(uniform01(rng) * 60000.0);
            m.text = text;
            result.messages.push_back(std::move(m));
        }
    }
    std::sort(result.messages.begin(), result.messages.end(),
              [](const GroupMessage& a, const GroupMessage& b) {
                  if (a.sent_at != b.sent_at) return a.sent_at < b.sent_at;
                  return a.group_id < b.group_id;
              });
}

void build_snapshots(const Builder& b, SynthResult& result) {
    std::unordered_map<std::string, int64_t> counts;
    for (const Tweet& t : result.corpus.tweets) {
        for (const std::string& tag : t.hashtags) counts[tag]++;
    }
    std::unordered_set<std::string> listed;
    for (const std::string& city : b.city_tags) listed.insert(city);
    for (const CampaignSpec& c : b.cfg.campaigns) listed.insert(c.hashtag);

    TimeMs end = b.cfg.organic.span_end;
    for (const Tweet& t : result.corpus.tweets) end = std::max(end, t.created_at);
    TrendSnapshot snap;
    snap.captured_at = (end / (30 * kMsPerMinute)) * (30 * kMsPerMinute);  // half-hour grid
    snap.location = "india";
    for (const auto& [tag, count] : counts) {
        if (listed.count(tag)) snap.entries.push_back({tag, count});
    }
    std::sort(snap.entries.begin(), snap.entries.end(),
              [](const TrendSnapshotEntry& a, const TrendSnapshotEntry& b) {
                  if (*a.reported_tweet_count != *b.reported_tweet_count)
                      return *a.reported_tweet_count > *b.reported_tweet_count;
                  return a.hashtag < b.hashtag;
              });
    result.snapshots.push_back(std::move(snap));
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
    Builder b(config);
    SynthResult result;

    result.banks.reserve(config.campaigns.size());
    for (uint32_t c = 0; c < config.campaigns.size(); ++c)
        result.banks.push_back(generate_bank(b, config.campaigns[c], c));
    for (uint32_t c = 0; c < config.campaigns.size(); ++c)
        generate_campaign(b, config.campaigns[c], result.banks[c], c);
    generate_organic(b);

    // Chronological corpus order with ids as tiebreaker.
    std::vector<size_t> order(b.tweets.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (b.tweets[x].created_at != b.tweets[y].created_at)
            return b.tweets[x].created_at < b.tweets[y].created_at;
        return b.tweets[x].tweet_id < b.tweets[y].tweet_id;
    });
    result.corpus.tweets.reserve(b.tweets.size());
    result.truth.tweets.reserve(b.tweets.size());
    for (size_t i : order) {
        result.corpus.tweets.push_back(std::move(b.tweets[i]));
        result.truth.tweets.push_back(std::move(b.tweet_truth[i]));
    }
    result.corpus.rebuild_index();

    // Author roles.
    std::unordered_set<std::string> seen_authors;
    for (const Tweet& t : result.corpus.tweets) {
        if (!seen_authors.insert(t.author_id).second) continue;
        AuthorTruth a;
        a.author_id = t.author_id;
        auto it = b.banks_by_author.find(t.author_id);
        if (it == b.banks_by_author.end()) {
            a.role = "organic";
        } else {
            a.bank_ids = it->second;
            std::sort(a.bank_ids.begin(), a.bank_ids.end());
            a.role = a.bank_ids.size() > 5 ? "core" : "participant";
        }
        result.truth.authors.push_back(std::move(a));
    }
    std::sort(result.truth.authors.begin(), result.truth.authors.end(),
              [](const AuthorTruth& a, const AuthorTruth& b) {
                  return a.author_id < b.author_id;
              });

    build_snapshots(b, result);
    if (config.emit_group_fixtures) generate_group_fixtures(b, result);
    result.city_hashtags = b.city_tags;
    return result;
}

DownsampleResult downsample(const Corpus& corpus, double keep_fraction, uint64_t seed,
                            bool bias_retweets) {
    DownsampleResult out;
    out.kept.assign(corpus.tweets.size(), 0);
    if (keep_fraction <= 0.0 || keep_fraction > 1.0)
        throw InputError("keep fraction must be in (0, 1]");

    double p_retweet = keep_fraction;
    double p_original = keep_fraction;
    if (bias_retweets) {
        size_t n_retweets = 0;
        for (const Tweet& t : corpus.tweets)
            if (t.retweet()) ++n_retweets;
        size_t n_originals = corpus.tweets.size() - n_retweets;
        // Retweets kept at 70% of the nominal rate; originals absorb the
        // difference so the overall expectation stays keep_fraction.
        p_retweet = keep_fraction * 0.7;
        if (n_originals > 0) {
            p_original = (keep_fraction * double(corpus.tweets.size()) -
                          p_retweet * double(n_retweets)) /
                         double(n_originals);
            p_original = std::min(1.0, p_original);
        }
    }

    auto rng = make_stream(seed, "downsample", 0);
    for (size_t i = 0; i < corpus.tweets.size(); ++i) {
        double p = corpus.tweets[i].retweet() ? p_retweet : p_original;
        if (uniform01(rng) < p) {
            out.kept[i] = 1;
            out.corpus.tweets.push_back(corpus.tweets[i]);
        }
    }
    out.corpus.rebuild_index();
    return out;
}

GroundTruth filter_truth(const GroundTruth& truth, const Corpus& original,
                         const std::vector<char>& kept) {
    GroundTruth out;
    std::unordered_set<std::string> kept_authors;
    for (size_t i = 0; i < original.tweets.size() && i < kept.size(); ++i) {
        if (!kept[i]) continue;
        if (i < truth.tweets.size()) out.tweets.push_back(truth.tweets[i]);
        kept_authors.insert(original.tweets[i].author_id);
    }
    for (const AuthorTruth& a : truth.authors) {
        if (kept_authors.count(a.author_id)) out.authors.push_back(a);
    }
    return out;
}

SynthConfig config_from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw InputError("malformed config: " + path.string());

    SynthConfig cfg;
    cfg.seed = j.value("seed", uint64_t{1});
    cfg.supporter_pool = j.value("supporter_pool", cfg.supporter_pool);
    cfg.supporter_zipf_exponent = j.value("supporter_zipf_exponent", cfg.supporter_zipf_exponent);
    cfg.emit_group_fixtures = j.value("emit_group_fixtures", cfg.emit_group_fixtures);

    auto parse_time = [&](const json& node, const char* what) -> TimeMs {
        if (!node.is_string()) throw InputError(std::string("config: missing ") + what);
        auto ts = parse_rfc3339(node.get<std::string>());
        if (!ts) throw InputError(std::string("config: malformed ") + what);
        return *ts;
    };

    if (j.contains("organic")) {
        const json& o = j["organic"];
        cfg.organic.n_tweets = o.value("n_tweets", cfg.organic.n_tweets);
        cfg.organic.n_authors = o.value("n_authors", cfg.organic.n_authors);
        cfg.organic.n_city_hashtags = o.value("n_city_hashtags", cfg.organic.n_city_hashtags);
        cfg.organic.city_hashtag_rate = o.value("city_hashtag_rate", cfg.organic.city_hashtag_rate);
        cfg.organic.retweet_rate = o.value("retweet_rate", cfg.organic.retweet_rate);
        cfg.organic.devanagari_rate = o.value("devanagari_rate", cfg.organic.devanagari_rate);
        cfg.organic.vocabulary_size = o.value("vocabulary_size", cfg.organic.vocabulary_size);
        if (o.contains("span_start")) cfg.organic.span_start = parse_time(o["span_start"], "organic.span_start");
        if (o.contains("span_end")) cfg.organic.span_end = parse_time(o["span_end"], "organic.span_end");
    }
    for (const json& c : j.value("campaigns", json::array())) {
        CampaignSpec spec;
        spec.hashtag = c.value("hashtag", "");
        if (spec.hashtag.empty()) throw InputError("config: campaign without hashtag");
        spec.launch_at = parse_time(c.at("launch_at"), "campaign launch_at");
        spec.n_templates = c.value("n_templates", spec.n_templates);
        spec.n_participants = c.value("n_participants", spec.n_participants);
        spec.posts_per_participant_mean =
            c.value("posts_per_participant_mean", spec.posts_per_participant_mean);
        spec.perturbation_rate = c.value("perturbation_rate", spec.perturbation_rate);
        if (c.contains("perturbation_kinds")) {
            spec.perturbation_kinds.clear();
            for (const json& k : c["perturbation_kinds"]) {
                auto kind = perturbation_from_name(k.get<std::string>());
                if (!kind) throw InputError("config: unknown perturbation kind");
                spec.perturbation_kinds.push_back(*kind);
            }
            if (spec.perturbation_kinds.empty())
                throw InputError("config: empty perturbation kind list");
        }
        if (c.contains("ramp")) {
            const json& r = c["ramp"];
            spec.ramp.trickle_minutes = r.value("trickle_minutes", spec.ramp.trickle_minutes);
            spec.ramp.trickle_rate_per_min =
                r.value("trickle_rate_per_min", spec.ramp.trickle_rate_per_min);
            spec.ramp.burst_lead_minutes =
                r.value("burst_lead_minutes", spec.ramp.burst_lead_minutes);
            spec.ramp.ramp_minutes = r.value("ramp_minutes", spec.ramp.ramp_minutes);
            spec.ramp.burst_rate_per_min =
                r.value("burst_rate_per_min", spec.ramp.burst_rate_per_min);
            spec.ramp.decay_half_life_min =
                r.value("decay_half_life_min", spec.ramp.decay_half_life_min);
            spec.ramp.decay_cutoff_minutes =
                r.value("decay_cutoff_minutes", spec.ramp.decay_cutoff_minutes);
        }
        spec.retweet_multiplier = c.value("retweet_multiplier", spec.retweet_multiplier);
        spec.chatter_per_original = c.value("chatter_per_original", spec.chatter_per_original);
        if (c.contains("total_tweets")) spec.total_tweets = c["total_tweets"].get<uint64_t>();
        cfg.campaigns.push_back(std::move(spec));
    }
    return cfg;
}

void write_truth_file(const GroundTruth& truth, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    for (const TweetTruth& t : truth.tweets) {
        json j;
        j["kind"] = "tweet";
        j["tweet_id"] = t.tweet_id;
        j["label"] = t.campaign ? "campaign" : "organic";
        if (t.campaign) {
            j["bank_id"] = t.bank_id;
            j["template_index"] = t.template_index;
            j["perturbed"] = t.perturbed;
            if (t.perturbed) {
                j["perturbation"] = t.perturbation;
                j["exceeds_fuzzy"] = t.exceeds_fuzzy;
            }
        }
        j["is_retweet"] = t.is_retweet;
        out << j.dump() << '\n';
    }
    for (const AuthorTruth& a : truth.authors) {
        json j;
        j["kind"] = "author";
        j["author_id"] = a.author_id;
        j["role"] = a.role;
        if (!a.bank_ids.empty()) j["bank_ids"] = a.bank_ids;
        out << j.dump() << '\n';
    }
}

namespace {

std::string synthetic_campaign_tag(uint64_t seed, uint32_t idx) {
    auto rng = make_stream(seed, "campaign-tag", idx);
    Vocabulary v = build_vocabulary(512);
    std::string tag = v.sample(rng) + v.sample(rng);
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02u", idx % 100);
    return tag + buf;
}

}  // namespace

SynthConfig default_detection_config(uint64_t seed, int n_campaigns) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.organic.n_tweets = 60'000;
    cfg.organic.n_authors = 8'000;
    cfg.organic.span_start = *parse_rfc3339("2019-01-01T00:00:00+05:30");
    cfg.organic.span_end = *parse_rfc3339("2019-05-31T00:00:00+05:30");
    TimeMs first_launch = *parse_rfc3339("2019-02-01T09:00:00+05:30");
    for (int c = 0; c < n_campaigns; ++c) {
        CampaignSpec spec;
        spec.hashtag = synthetic_campaign_tag(seed, static_cast<uint32_t>(c));
        spec.launch_at = first_launch + TimeMs(c) * 4 * kMsPerDay;
        spec.ramp.burst_rate_per_min = 25.0;
        spec.ramp.decay_half_life_min = 90.0;
        cfg.campaigns.push_back(std::move(spec));
    }
    return cfg;
}

SynthConfig case_study_replay_config(uint64_t seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.organic.n_tweets = 5'000;
    cfg.organic.n_authors = 2'000;
    cfg.organic.span_start = *parse_rfc3339("2019-03-19T00:00:00+05:30");
    cfg.organic.span_end = *parse_rfc3339("2019-03-20T00:00:00+05:30");

    CampaignSpec spec;
    spec.hashtag = "modimeinhaidum";
    spec.launch_at = *parse_rfc3339("2019-03-19T09:00:00+05:30");
    spec.n_templates = 100;
    spec.n_participants = 416;
    spec.posts_per_participant_mean = 4.0;
    spec.perturbation_rate = 0.25;
    spec.retweet_multiplier = 1.0;
    spec.total_tweets = 46'000;
    spec.ramp.trickle_minutes = 63;  // first trickle tweet lands around 7:47
    spec.ramp.trickle_rate_per_min = 0.5;
    spec.ramp.burst_lead_minutes = 10;  // takes off around 8:50
    spec.ramp.ramp_minutes = 30;
    spec.ramp.burst_rate_per_min = 240.0;
    spec.ramp.decay_half_life_min = 120.0;
    spec.ramp.decay_cutoff_minutes = 14 * 60;
    cfg.campaigns.push_back(std::move(spec));
    return cfg;
}

SynthConfig perf_config(uint64_t seed, uint64_t total_tweets, int n_campaigns) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.supporter_pool = 6'000;
    cfg.organic.n_authors = 50'000;
    cfg.organic.span_start = *parse_rfc3339("2019-01-01T00:00:00+05:30");
    cfg.organic.span_end = *parse_rfc3339("2019-05-31T00:00:00+05:30");
    cfg.emit_group_fixtures = false;

    uint64_t campaign_budget = 0;
    TimeMs first_launch = *parse_rfc3339("2019-01-10T09:00:00+05:30");
    for (int c = 0; c < n_campaigns; ++c) {
        CampaignSpec spec;
        spec.hashtag = synthetic_campaign_tag(seed, static_cast<uint32_t>(c));
        spec.launch_at = first_launch + TimeMs(c) * 45 * kMsPerHour;
        spec.n_participants = 141;
        spec.ramp.burst_rate_per_min = 25.0;
        spec.ramp.decay_half_life_min = 90.0;
        campaign_budget += 1'466;  // expected volume at the defaults above
        cfg.campaigns.push_back(std::move(spec));
    }
    cfg.organic.n_tweets = total_tweets > campaign_budget ? total_tweets - campaign_budget : 0;
    return cfg;
}

}  // namespace trendforge
