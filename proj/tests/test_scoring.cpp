#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "kex/scoring.hpp"
#include "test_util.hpp"

using namespace kex;

namespace {

Document doc_from_tokens(const std::vector<std::string>& norms,
                         const std::string& id = "d") {
    Document d;
    d.id = id;
    for (const auto& n : norms) {
        if (!d.abstract.empty()) d.abstract += ' ';
        d.abstract += n;
    }
    tokenize(d);
    return d;
}

// brute-force n-gram counting oracle, independent of NgramCounts
double oracle_pmi_min(const std::vector<std::string>& cand,
                      const std::vector<std::vector<std::string>>& streams,
                      bool& defined) {
    auto count = [&](const std::vector<std::string>& gram) {
        long c = 0;
        for (const auto& s : streams)
            for (std::size_t i = 0; i + gram.size() <= s.size(); ++i) {
                bool m = true;
                for (std::size_t j = 0; j < gram.size(); ++j)
                    if (s[i + j] != gram[j]) {
                        m = false;
                        break;
                    }
                if (m) ++c;
            }
        return c;
    };
    auto total = [&](std::size_t n) {
        long t = 0;
        for (const auto& s : streams)
            if (s.size() >= n) t += long(s.size() - n + 1);
        return t;
    };
    defined = true;
    long cf = count(cand);
    if (cf == 0) {
        defined = false;
        return 0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t split = 1; split < cand.size(); ++split) {
        std::vector<std::string> x(cand.begin(), cand.begin() + split);
        std::vector<std::string> y(cand.begin() + split, cand.end());
        long cx = count(x), cy = count(y);
        if (cx == 0 || cy == 0) {
            defined = false;
            return 0;
        }
        double p = (double(cf) / total(cand.size())) /
                   ((double(cx) / total(split)) *
                    (double(cy) / total(cand.size() - split)));
        best = std::min(best, std::log2(p));
    }
    return best;
}

}  // namespace

TEST_CASE("pmi_min: worked bigram example") {
    // bigram "a b" occurring twice in an 8-token stream, all unigram
    // counts 2: log2((2/7) / ((2/8)*(2/8))) ~= 2.193
    Document d = doc_from_tokens({"a", "b", "c", "d", "a", "b", "c", "d"});
    NgramCounts counts({d}, 2);
    auto r = pmi_min({"a", "b"}, counts);
    REQUIRE(r.defined);
    CHECK(r.value ==
          doctest::Approx(std::log2((2.0 / 7.0) / ((2.0 / 8.0) * (2.0 / 8.0))))
              .epsilon(1e-12));
    CHECK(r.value == doctest::Approx(2.193).epsilon(1e-3));
}

TEST_CASE("pmi_min: minimum over both splits of a trigram") {
    Document d = doc_from_tokens(
        {"explainable", "artificial", "intelligence", "x", "explainable",
         "artificial", "intelligence", "artificial", "intelligence"});
    NgramCounts counts({d}, 3);
    auto r = pmi_min({"explainable", "artificial", "intelligence"}, counts);
    REQUIRE(r.defined);
    bool defined = false;
    double expected = oracle_pmi_min(
        {"explainable", "artificial", "intelligence"},
        {{"explainable", "artificial", "intelligence", "x", "explainable",
          "artificial", "intelligence", "artificial", "intelligence"}},
        defined);
    REQUIRE(defined);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("pmi_min: unseen joint n-gram is undefined") {
    Document d = doc_from_tokens({"a", "x", "b"});
    NgramCounts counts({d}, 2);
    CHECK_FALSE(pmi_min({"a", "b"}, counts).defined);
}

TEST_CASE("pmi_min: unigram input rejected") {
    Document d = doc_from_tokens({"a"});
    NgramCounts counts({d}, 2);
    CHECK_THROWS_AS(pmi_min({"a"}, counts), std::invalid_argument);
}

TEST_CASE("pmi_min equals brute-force oracle on random corpora") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> len_dist(20, 300);
        std::uniform_int_distribution<int> vocab_dist(0, 9);
        std::vector<std::string> stream;
        int len = len_dist(rng);
        for (int i = 0; i < len; ++i)
            stream.push_back("w" + std::to_string(vocab_dist(rng)));
        Document d = doc_from_tokens(stream);
        NgramCounts counts({d}, 4);
        // test every 2..4-gram that actually occurs
        std::uniform_int_distribution<int> pos_dist(0, len - 4);
        for (int probe = 0; probe < 30; ++probe) {
            int p = pos_dist(rng);
            int n = 2 + probe % 3;
            std::vector<std::string> cand(stream.begin() + p,
                                          stream.begin() + p + n);
            auto r = pmi_min(cand, counts);
            bool defined = false;
            double expected = oracle_pmi_min(cand, {stream}, defined);
            REQUIRE(r.defined == defined);
            if (defined)
                CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("lr_entropy analytic values") {
    SUBCASE("single occurrence gives zero") {
        Document d = doc_from_tokens({"x", "target", "y"});
        CHECK(lr_entropy({"target"}, {d}) == doctest::Approx(0.0));
    }
    SUBCASE("uniform neighbors: min(log2 4, log2 8)") {
        // 8 occurrences: left neighbors uniform over 8 symbols, right
        // neighbors uniform over 4
        std::vector<std::string> stream;
        for (int i = 0; i < 8; ++i) {
            stream.push_back("l" + std::to_string(i));
            stream.push_back("t");
            stream.push_back("r" + std::to_string(i % 4));
        }
        Document d = doc_from_tokens(stream);
        CHECK(lr_entropy({"t"}, {d}) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("left counts {2,1,1} give 1.5") {
        std::vector<std::string> stream;
        const char* lefts[] = {"a", "a", "b", "c"};
        for (int i = 0; i < 4; ++i) {
            stream.push_back(lefts[i]);
            stream.push_back("t");
            stream.push_back("u" + std::to_string(i));  // right: uniform 4 -> 2.0
        }
        Document d = doc_from_tokens(stream);
        CHECK(lr_entropy({"t"}, {d}) == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("stream boundary contributes a distinct symbol") {
        Document d = doc_from_tokens({"t", "a", "t", "a"});
        // left neighbors of "t": boundary, "a" -> entropy 1
        // right neighbors: "a", "a" -> entropy 0; min = 0
        CHECK(lr_entropy({"t"}, {d}) == doctest::Approx(0.0));
    }
    SUBCASE("zero occurrences throws") {
        Document d = doc_from_tokens({"a"});
        CHECK_THROWS_AS(lr_entropy({"zzz"}, {d}), std::runtime_error);
    }
}

TEST_CASE("length_penalty table") {
    CHECK(length_penalty(1, false) == doctest::Approx(-1.0));
    CHECK(length_penalty(1, true) == doctest::Approx(0.0));
    CHECK(length_penalty(2, false) == doctest::Approx(0.0));
    CHECK(length_penalty(3, false) == doctest::Approx(0.0));
    CHECK(length_penalty(4, false) == doctest::Approx(-0.5));
    CHECK(length_penalty(5, false) == doctest::Approx(-1.0));
}

TEST_CASE("document_relevance") {
    CandidatePhrase c;
    c.n_tokens = 2;
    Vector dv{1, 0};
    SUBCASE("identical vector, not in title") {
        CHECK(document_relevance(c, Vector{2, 0}, dv, 0.1) ==
              doctest::Approx(1.0));
    }
    SUBCASE("title boost multiplies by 1 + boost * n_tokens") {
        c.in_title = true;
        Vector half{1, std::sqrt(3.0)};  // cosine 0.5 with (1,0)
        CHECK(document_relevance(c, half, dv, 0.1) == doctest::Approx(0.6));
    }
    SUBCASE("OOV candidate scores zero") {
        CHECK(document_relevance(c, std::nullopt, dv, 0.1) == 0.0);
    }
}

TEST_CASE("domain_relevance") {
    EmbeddingTable t;
    t.insert("g1", {1, 0, 0});
    t.insert("g2", {0, 1, 0});
    t.insert("g3", {0, 0, 1});
    SUBCASE("ceil convention: 3 terms, fraction 0.5 averages 2") {
        auto g = Glossary::from_terms({"g1", "g2", "g3"}, t);
        // candidate along g1: sims {1, 0, 0}; top-2 mean = 0.5
        CHECK(domain_relevance(Vector{1, 0, 0}, g, 0.5) ==
              doctest::Approx(0.5));
    }
    SUBCASE("identical to the single glossary term") {
        auto g = Glossary::from_terms({"g1"}, t);
        CHECK(domain_relevance(Vector{2, 0, 0}, g, 0.5) ==
              doctest::Approx(1.0));
    }
    SUBCASE("top-fraction mean of synthetic similarities") {
        EmbeddingTable t2;
        t2.insert("a", {1, 0});
        auto g = Glossary::from_terms({"a"}, t2);
        // direct formula check is covered by the ceil case; empty errors:
        Glossary empty;
        CHECK_THROWS_AS(domain_relevance(Vector{1, 0}, empty, 0.5),
                        std::runtime_error);
    }
    SUBCASE("OOV candidate scores zero") {
        auto g = Glossary::from_terms({"g1"}, t);
        CHECK(domain_relevance(std::nullopt, g, 0.5) == 0.0);
    }
}

TEST_CASE("combined_score") {
    ScoreBreakdown b;
    b.doc_rel = 0.5;
    b.domain_rel = 0.4;
    b.quality = 0.2;
    CHECK(combined_score(b, 0.1, 0.1) == doctest::Approx(0.56));
    CHECK(combined_score(b, 0.0, 0.0) == doctest::Approx(0.5));
    ScoreBreakdown z;
    CHECK(combined_score(z, 0.1, 0.1) == 0.0);
}

namespace {

// small two-document fixture exercising the full scorer
struct ScorerFixture {
    std::vector<Document> docs;
    std::vector<std::vector<CandidatePhrase>> cands;
    EmbeddingTable table;
    SifWeights sif;

    ScorerFixture() {
        docs.push_back(doc_from_tokens(
            {"neural", "network", "model", "neural", "network", "approach",
             "model", "neural", "network"},
            "d1"));
        docs.push_back(doc_from_tokens(
            {"decision", "tree", "model", "decision", "tree", "system"},
            "d2"));
        table.insert("neural", {1, 0, 0});
        table.insert("network", {0.9, 0.1, 0});
        table.insert("model", {0.5, 0.5, 0});
        table.insert("approach", {0.4, 0.6, 0});
        table.insert("decision", {0, 1, 0});
        table.insert("tree", {0.1, 0.9, 0});
        table.insert("system", {0.2, 0.8, 0});
        sif = SifWeights::from_corpus(docs);

        auto mk = [](const std::string& id, const std::string& norm, int n,
                     std::size_t start) {
            CandidatePhrase c;
            c.doc_id = id;
            c.norm = norm;
            c.surface = norm;
            c.n_tokens = n;
            c.start = start;
            c.end = start + n;
            return c;
        };
        cands.push_back({mk("d1", "neural network", 2, 0),
                         mk("d1", "model", 1, 2),
                         mk("d1", "approach", 1, 5)});
        cands.push_back({mk("d2", "decision tree", 2, 0),
                         mk("d2", "model", 1, 2),
                         mk("d2", "system", 1, 5)});
    }
};

}  // namespace

TEST_CASE("rank_candidates: deterministic descending order with tie-break") {
    ScorerFixture fx;
    ScoringParams params;
    CorpusScorer scorer(fx.docs, fx.cands, fx.table, fx.sif, nullptr, params);
    auto lists = scorer.rank_all();
    REQUIRE(lists.size() == 2);
    for (const auto& list : lists) {
        for (std::size_t i = 1; i < list.entries.size(); ++i) {
            const auto& prev = list.entries[i - 1];
            const auto& cur = list.entries[i];
            bool ordered = prev.score.combined > cur.score.combined ||
                           (prev.score.combined == cur.score.combined &&
                            prev.cand.norm < cur.cand.norm);
            CHECK(ordered);
        }
    }
    // repeat run is identical
    auto lists2 = scorer.rank_all();
    for (std::size_t i = 0; i < lists.size(); ++i)
        for (std::size_t j = 0; j < lists[i].entries.size(); ++j)
            CHECK(lists[i].entries[j].cand.norm ==
                  lists2[i].entries[j].cand.norm);
}

TEST_CASE("baseline consistency: zero weights order by doc_rel alone") {
    ScorerFixture fx;
    ScoringParams zero;
    zero.w_domain = 0;
    zero.w_quality = 0;
    CorpusScorer scorer(fx.docs, fx.cands, fx.table, fx.sif, nullptr, zero);
    for (auto& list : scorer.rank_all()) {
        for (std::size_t i = 1; i < list.entries.size(); ++i)
            CHECK(list.entries[i - 1].score.doc_rel >=
                  list.entries[i].score.doc_rel);
    }
}

TEST_CASE("quality composition: PMI gate and normalized entropy") {
    ScorerFixture fx;
    ScoringParams params;
    CorpusScorer scorer(fx.docs, fx.cands, fx.table, fx.sif, nullptr, params);

    const auto& q = scorer.quality_parts("neural network");
    CHECK(q.pmi.defined);
    if (q.survives) {
        CHECK(q.norm_entropy >= 0.0);
        CHECK(q.norm_entropy <= 1.0);
    }
    // unigrams bypass the gate
    CHECK(scorer.quality_parts("model").survives);
}

TEST_CASE("monotonicity: raising quality never lowers combined") {
    ScoreBreakdown b;
    b.doc_rel = 0.3;
    b.domain_rel = 0.2;
    b.quality = 0.1;
    double base = combined_score(b, 0.1, 0.1);
    b.quality = 0.5;
    CHECK(combined_score(b, 0.1, 0.1) >= base);
    b.domain_rel = 0.9;
    CHECK(combined_score(b, 0.1, 0.1) >= base);
}
