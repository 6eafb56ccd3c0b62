#include "doctest.h"

#include <algorithm>
#include <random>

#include "trendforge/detection.hpp"
#include "trendforge/matching.hpp"

using namespace trendforge;

namespace {

Tweet make_tweet(const std::string& id, const std::string& author, const std::string& text,
                 std::vector<std::string> hashtags, bool retweet = false,
                 TimeMs at = 1'552'986'000'000) {
    Tweet t;
    t.tweet_id = id;
    t.author_id = author;
    t.created_at = at;
    t.raw_text = text;
    t.hashtags = std::move(hashtags);
    if (retweet) t.is_retweet = true;
    return t;
}

Corpus make_corpus(std::vector<Tweet> tweets) {
    Corpus c;
    c.tweets = std::move(tweets);
    c.rebuild_index();
    return c;
}

// Long enough to clear the 20-char eligibility gate.
std::string body(const std::string& salt) {
    return "some sufficiently long tweet body " + salt;
}

// Quadratic all-pairs duplicate counter, the independent oracle for
// duplicate_ratio on small corpora.
int64_t brute_force_repeated(const Corpus& corpus, std::span<const NormalForm> norms,
                             const std::string& hashtag) {
    int64_t repeated = 0;
    for (size_t i = 0; i < corpus.tweets.size(); ++i) {
        const Tweet& a = corpus.tweets[i];
        if (a.retweet()) continue;
        if (std::find(a.hashtags.begin(), a.hashtags.end(), hashtag) == a.hashtags.end())
            continue;
        if (norms[i].char_len < kExactMinChars) continue;
        bool has_twin = false;
        for (size_t j = 0; j < corpus.tweets.size(); ++j) {
            if (i == j) continue;
            const Tweet& b = corpus.tweets[j];
            if (b.retweet()) continue;
            if (std::find(b.hashtags.begin(), b.hashtags.end(), hashtag) == b.hashtags.end())
                continue;
            if (norms[j].char_len < kExactMinChars) continue;
            if (norms[i].canonical == norms[j].canonical) {
                has_twin = true;
                break;
            }
        }
        if (has_twin) ++repeated;
    }
    return repeated;
}

MatchRecord record(const std::string& tweet_id, const std::string& bank_id, uint32_t tmpl,
                   MatchTier tier = {TierKind::Exact, 0}, bool is_retweet = false) {
    MatchRecord r;
    r.tweet_id = tweet_id;
    r.bank_id = bank_id;
    r.template_index = tmpl;
    r.tier = tier;
    r.is_retweet = is_retweet;
    return r;
}

TemplateBank bank(const std::string& id, const std::string& hashtag) {
    TemplateBank b;
    b.bank_id = id;
    b.campaign_hashtag = hashtag;
    b.templates = {"placeholder template body"};
    return b;
}

}  // namespace

TEST_CASE("duplicate ratio on hand-enumerated corpora") {
    std::vector<Tweet> tweets;
    for (int i = 0; i < 10; ++i)
        tweets.push_back(make_tweet("d" + std::to_string(i), "a", body(std::to_string(i)), {"x"}));
    Corpus distinct = make_corpus(tweets);
    auto norms = normalize_corpus(distinct);
    CHECK(*duplicate_ratio("x", distinct, norms).duplicate_ratio == doctest::Approx(0.0));

    tweets.clear();
    for (int i = 0; i < 10; ++i)
        tweets.push_back(make_tweet("i" + std::to_string(i), "a", body("same"), {"x"}));
    Corpus identical = make_corpus(tweets);
    norms = normalize_corpus(identical);
    CHECK(*duplicate_ratio("x", identical, norms).duplicate_ratio == doctest::Approx(1.0));

    tweets.clear();
    for (int i = 0; i < 4; ++i)
        tweets.push_back(make_tweet("g" + std::to_string(i), "a", body("grouped"), {"x"}));
    for (int i = 0; i < 6; ++i)
        tweets.push_back(make_tweet("u" + std::to_string(i), "a", body("uniq" + std::to_string(i)),
                                    {"x"}));
    Corpus mixed = make_corpus(tweets);
    norms = normalize_corpus(mixed);
    HashtagVerdict v = duplicate_ratio("x", mixed, norms);
    CHECK(v.eligible_volume == 10);
    CHECK(v.repeated_count == 4);
    CHECK(*v.duplicate_ratio == doctest::Approx(0.4));
}

TEST_CASE("ratio is absent when nothing is eligible") {
    Corpus corpus = make_corpus({make_tweet("t1", "a", "short", {"x"}),
                                 make_tweet("t2", "a", body("rt only"), {"x"}, true)});
    auto norms = normalize_corpus(corpus);
    HashtagVerdict v = duplicate_ratio("x", corpus, norms);
    CHECK(v.volume == 2);
    CHECK(v.original_volume == 1);
    CHECK(v.eligible_volume == 0);
    CHECK_FALSE(v.duplicate_ratio.has_value());
}

TEST_CASE("duplicate ratio agrees with the quadratic oracle on random corpora") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Tweet> tweets;
        int n = 20 + static_cast<int>(rng() % 180);
        for (int i = 0; i < n; ++i) {
            std::string text;
            switch (rng() % 4) {
                case 0: text = body("shared-" + std::to_string(rng() % 5)); break;
                case 1: text = body("unique-" + std::to_string(i)); break;
                case 2: text = "tiny"; break;
                default: text = body("pair-" + std::to_string(rng() % (n / 4 + 1))); break;
            }
            tweets.push_back(make_tweet("t" + std::to_string(i), "a" + std::to_string(rng() % 9),
                                        text, {"h"}, rng() % 5 == 0));
        }
        Corpus corpus = make_corpus(std::move(tweets));
        auto norms = normalize_corpus(corpus);
        HashtagVerdict v = duplicate_ratio("h", corpus, norms);
        CHECK(v.repeated_count == brute_force_repeated(corpus, norms, "h"));
    }
}

TEST_CASE("retweet injection changes neither numerator nor denominator") {
    std::vector<Tweet> tweets;
    for (int i = 0; i < 30; ++i) {
        tweets.push_back(make_tweet("t" + std::to_string(i), "a" + std::to_string(i),
                                    body(std::to_string(i % 7)), {"x"}));
    }
    Corpus before = make_corpus(tweets);
    auto norms_before = normalize_corpus(before);
    HashtagVerdict v_before = duplicate_ratio("x", before, norms_before);

    std::vector<Tweet> doubled = tweets;
    for (int i = 0; i < 30; ++i) {
        Tweet rt = tweets[i];
        rt.tweet_id = "rt" + std::to_string(i);
        rt.raw_text = "RT @a: " + rt.raw_text;
        rt.is_retweet = true;
        rt.retweet_of = tweets[i].tweet_id;
        doubled.push_back(std::move(rt));
    }
    Corpus after = make_corpus(std::move(doubled));
    auto norms_after = normalize_corpus(after);
    HashtagVerdict v_after = duplicate_ratio("x", after, norms_after);

    CHECK(v_after.repeated_count == v_before.repeated_count);
    CHECK(v_after.eligible_volume == v_before.eligible_volume);
    CHECK(*v_after.duplicate_ratio == *v_before.duplicate_ratio);
    CHECK(v_after.volume == v_before.volume + 30);
}

TEST_CASE("classification thresholds and gates") {
    std::vector<Tweet> tweets;
    // 600 tweets under #hot: 150 duplicates in one group + 450 unique.
    for (int i = 0; i < 150; ++i)
        tweets.push_back(make_tweet("dup" + std::to_string(i), "seed" + std::to_string(i % 20),
                                    body("dup"), {"hot"}));
    for (int i = 0; i < 450; ++i)
        tweets.push_back(make_tweet("unq" + std::to_string(i), "seed" + std::to_string(i % 20),
                                    body("u" + std::to_string(i)), {"hot"}));
    // 499 tweets under #small with total duplication.
    for (int i = 0; i < 499; ++i)
        tweets.push_back(make_tweet("sm" + std::to_string(i), "seed" + std::to_string(i % 20),
                                    body("dup"), {"small"}));
    Corpus corpus = make_corpus(std::move(tweets));
    auto norms = normalize_corpus(corpus);

    std::unordered_set<std::string> seeds;
    for (int i = 0; i < 20; ++i) seeds.insert("seed" + std::to_string(i));

    auto verdicts = classify_hashtags(corpus, norms, seeds);
    REQUIRE(verdicts.size() == 2);
    const HashtagVerdict* hot = nullptr;
    const HashtagVerdict* small = nullptr;
    for (const auto& v : verdicts) (v.hashtag == "hot" ? hot : small) = &v;
    REQUIRE(hot != nullptr);
    REQUIRE(small != nullptr);

    CHECK(*hot->duplicate_ratio == doctest::Approx(0.25));
    CHECK(hot->label == VerdictLabel::Suspicious);
    CHECK(small->label == VerdictLabel::NotEvaluated);  // volume 499 < 500

    // Sorted by ratio descending.
    CHECK(verdicts[0].hashtag == "small");

    DetectionThresholds strict;
    strict.min_volume = 400;
    auto verdicts2 = classify_hashtags(corpus, norms, seeds, strict);
    for (const auto& v : verdicts2) {
        if (v.hashtag == "small") CHECK(v.label == VerdictLabel::SuspiciousConservative);
    }

    // Boundary semantics: ratio exactly at standard stays organic; ratio
    // exactly at conservative is conservative.
    DetectionThresholds at_boundary;
    at_boundary.standard = 0.25;
    at_boundary.conservative = 0.25;
    auto verdicts3 = classify_hashtags(corpus, norms, seeds, at_boundary);
    for (const auto& v : verdicts3) {
        if (v.hashtag == "hot") CHECK(v.label == VerdictLabel::SuspiciousConservative);
    }
    DetectionThresholds above;
    above.standard = 0.25;
    above.conservative = 0.9;
    auto verdicts4 = classify_hashtags(corpus, norms, seeds, above);
    for (const auto& v : verdicts4) {
        if (v.hashtag == "hot") CHECK(v.label == VerdictLabel::Organic);  // 0.25 is not > 0.25
    }
}

TEST_CASE("seed gate forces NotEvaluated") {
    std::vector<Tweet> tweets;
    for (int i = 0; i < 600; ++i)
        tweets.push_back(make_tweet("t" + std::to_string(i), "author" + std::to_string(i % 50),
                                    body("dup"), {"x"}));
    Corpus corpus = make_corpus(std::move(tweets));
    auto norms = normalize_corpus(corpus);

    std::unordered_set<std::string> outside_seeds = {"nobody1", "nobody2", "nobody3", "nobody4",
                                                     "nobody5"};
    auto verdicts = classify_hashtags(corpus, norms, outside_seeds);
    REQUIRE(verdicts.size() == 1);
    CHECK(verdicts[0].label == VerdictLabel::NotEvaluated);
    CHECK(verdicts[0].seed_participants == 0);

    std::unordered_set<std::string> four = {"author0", "author1", "author2", "author3"};
    CHECK(classify_hashtags(corpus, norms, four)[0].label == VerdictLabel::NotEvaluated);
    std::unordered_set<std::string> five = {"author0", "author1", "author2", "author3", "author4"};
    CHECK(classify_hashtags(corpus, norms, five)[0].label ==
          VerdictLabel::SuspiciousConservative);
}

TEST_CASE("threshold monotonicity on a random corpus") {
    std::mt19937_64 rng(31);
    std::vector<Tweet> tweets;
    for (int i = 0; i < 4000; ++i) {
        std::string tag = "tag" + std::to_string(rng() % 5);
        std::string text = rng() % 2 ? body("dup" + std::to_string(rng() % 3))
                                     : body("unique" + std::to_string(i));
        tweets.push_back(
            make_tweet("t" + std::to_string(i), "a" + std::to_string(rng() % 40), text, {tag}));
    }
    Corpus corpus = make_corpus(std::move(tweets));
    auto norms = normalize_corpus(corpus);
    std::unordered_set<std::string> seeds;
    for (int i = 0; i < 40; ++i) seeds.insert("a" + std::to_string(i));

    DetectionThresholds loose;
    loose.min_volume = 100;
    auto verdicts = classify_hashtags(corpus, norms, seeds, loose);
    int64_t suspicious = 0, conservative = 0;
    for (const auto& v : verdicts) {
        if (v.label == VerdictLabel::Suspicious || v.label == VerdictLabel::SuspiciousConservative)
            ++suspicious;
        if (v.label == VerdictLabel::SuspiciousConservative) ++conservative;
    }
    CHECK(conservative <= suspicious);
}

TEST_CASE("participants count only original matched tweets") {
    Corpus corpus = make_corpus({
        make_tweet("t1", "alice", body("one"), {"taga"}),
        make_tweet("t2", "alice", body("two"), {"taga"}),
        make_tweet("t3", "bob", body("three"), {"tagb"}, true),  // retweet
        make_tweet("t4", "carol", body("four"), {}),
    });
    std::vector<TemplateBank> banks = {bank("banka", "taga"), bank("bankb", "tagb")};
    std::vector<MatchRecord> records = {
        record("t1", "banka", 0),
        record("t2", "banka", 1),
        record("t3", "bankb", 0, {TierKind::Exact, 0}, true),
        record("t4", "bankb", 2),
    };
    auto output = classify_participants(records, corpus, banks);
    REQUIRE(output.participants.size() == 2);  // bob's retweet is excluded
    const ParticipantRecord& alice = output.participants[0];
    CHECK(alice.author_id == "alice");
    CHECK(alice.template_tweets_posted == 2);
    CHECK(alice.campaigns_joined == std::set<std::string>{"banka"});
    CHECK_FALSE(alice.core);
    CHECK(output.summary.participants_per_campaign.at("banka") == 1);
    CHECK(output.summary.contribution_histogram.at(1) == 2);
}

TEST_CASE("attribution prefers the bank whose hashtag the tweet carries") {
    Corpus corpus = make_corpus({make_tweet("t1", "alice", body("x"), {"tagb"})});
    std::vector<TemplateBank> banks = {bank("banka", "taga"), bank("bankb", "tagb")};
    // banka has the better tier but the tweet carries bankb's hashtag.
    std::vector<MatchRecord> records = {
        record("t1", "banka", 0, {TierKind::Exact, 0}),
        record("t1", "bankb", 0, {TierKind::Fuzzy, 2}),
    };
    auto output = classify_participants(records, corpus, banks);
    REQUIRE(output.participants.size() == 1);
    CHECK(output.participants[0].campaigns_joined == std::set<std::string>{"bankb"});

    // Without the hashtag, the best tier wins.
    Corpus corpus2 = make_corpus({make_tweet("t1", "alice", body("x"), {"neither"})});
    auto output2 = classify_participants(records, corpus2, banks);
    CHECK(output2.participants[0].campaigns_joined == std::set<std::string>{"banka"});
}

TEST_CASE("joining more than five campaigns marks a core supporter") {
    std::vector<Tweet> tweets;
    std::vector<TemplateBank> banks;
    std::vector<MatchRecord> records;
    for (int c = 0; c < 6; ++c) {
        std::string tag = "tag" + std::to_string(c);
        std::string bid = "bank" + std::to_string(c);
        banks.push_back(bank(bid, tag));
        tweets.push_back(make_tweet("t" + std::to_string(c), "core-author", body(tag), {tag}));
        records.push_back(record("t" + std::to_string(c), bid, 0));
    }
    Corpus corpus = make_corpus(std::move(tweets));
    auto output = classify_participants(records, corpus, banks);
    REQUIRE(output.participants.size() == 1);
    CHECK(output.participants[0].core);
    CHECK(core_contribution_share(output.participants) == doctest::Approx(1.0));
}

TEST_CASE("no matches yields no participants and zero core share") {
    Corpus corpus = make_corpus({make_tweet("t1", "a", body("x"), {"x"})});
    auto output = classify_participants({}, corpus, {});
    CHECK(output.participants.empty());
    CHECK(core_contribution_share(output.participants) == doctest::Approx(0.0));
}

TEST_CASE("participant classification is order independent") {
    std::mt19937_64 rng(37);
    std::vector<Tweet> tweets;
    std::vector<MatchRecord> records;
    std::vector<TemplateBank> banks = {bank("banka", "taga"), bank("bankb", "tagb")};
    for (int i = 0; i < 200; ++i) {
        std::string id = "t" + std::to_string(i);
        std::string author = "a" + std::to_string(rng() % 31);
        std::string tag = rng() % 2 ? "taga" : "tagb";
        tweets.push_back(make_tweet(id, author, body(std::to_string(i)), {tag}, rng() % 4 == 0));
        records.push_back(record(id, rng() % 2 ? "banka" : "bankb",
                                 static_cast<uint32_t>(rng() % 10),
                                 {TierKind::Exact, 0}, tweets.back().retweet()));
    }
    std::sort(records.begin(), records.end(), [](const MatchRecord& a, const MatchRecord& b) {
        return a.tweet_id < b.tweet_id;
    });
    Corpus corpus = make_corpus(tweets);
    auto baseline = classify_participants(records, corpus, banks);

    std::shuffle(tweets.begin(), tweets.end(), rng);
    Corpus shuffled = make_corpus(tweets);
    auto permuted = classify_participants(records, shuffled, banks);

    REQUIRE(baseline.participants.size() == permuted.participants.size());
    for (size_t i = 0; i < baseline.participants.size(); ++i) {
        CHECK(baseline.participants[i].author_id == permuted.participants[i].author_id);
        CHECK(baseline.participants[i].template_tweets_posted ==
              permuted.participants[i].template_tweets_posted);
        CHECK(baseline.participants[i].campaigns_joined ==
              permuted.participants[i].campaigns_joined);
    }
}

TEST_CASE("scope assigns hashtags to their peak month") {
    std::vector<Tweet> tweets;
    TimeMs march = *parse_rfc3339("2019-03-10T12:00:00+05:30");
    TimeMs april = *parse_rfc3339("2019-04-05T12:00:00+05:30");
    // Hashtag peaks in April despite March presence.
    for (int i = 0; i < 5; ++i)
        tweets.push_back(make_tweet("m" + std::to_string(i), "a", body("x"), {"x"}, false,
                                    march + i * kMsPerHour));
    for (int i = 0; i < 9; ++i)
        tweets.push_back(make_tweet("ap" + std::to_string(i), "a", body("x"), {"x"}, false,
                                    april + i * kMsPerMinute));
    Corpus corpus = make_corpus(std::move(tweets));

    HashtagVerdict suspicious;
    suspicious.hashtag = "x";
    suspicious.label = VerdictLabel::SuspiciousConservative;
    std::vector<HashtagVerdict> verdicts = {suspicious};

    auto scope = scope_by_month(verdicts, corpus);
    REQUIRE(scope.size() == 2);  // March and April in span
    CHECK(scope[0].month == "2019-03");
    CHECK(scope[0].suspicious_count == 0);
    CHECK(scope[1].month == "2019-04");
    CHECK(scope[1].suspicious_count == 1);
    CHECK(scope[1].conservative_count == 1);

    // Zero suspicious hashtags: all months present as zeros.
    auto empty_scope = scope_by_month({}, corpus);
    REQUIRE(empty_scope.size() == 2);
    CHECK(empty_scope[0].suspicious_count == 0);
    CHECK(empty_scope[1].suspicious_count == 0);
}

TEST_CASE("fuzzy duplicate grouping merges near-identical texts") {
    std::vector<Tweet> tweets;
    tweets.push_back(make_tweet("t1", "a", body("the original campaign message"), {"x"}));
    tweets.push_back(make_tweet("t2", "b", body("the original campaign messagX"), {"x"}));
    tweets.push_back(make_tweet("t3", "c", body("completely different text entirely"), {"x"}));
    Corpus corpus = make_corpus(std::move(tweets));
    auto norms = normalize_corpus(corpus);

    HashtagVerdict exact = duplicate_ratio("x", corpus, norms, false);
    CHECK(exact.repeated_count == 0);
    HashtagVerdict fuzzy = duplicate_ratio("x", corpus, norms, true);
    CHECK(fuzzy.repeated_count == 2);
}
