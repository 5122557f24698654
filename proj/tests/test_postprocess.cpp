#include "doctest.h"

#include "kex/postprocess.hpp"
#include "test_util.hpp"

using namespace kex;

namespace {

RankedEntry entry(const std::string& norm, double combined,
                  const std::string& doc_id = "d", int n_tokens = 2) {
    RankedEntry e;
    e.cand.doc_id = doc_id;
    e.cand.norm = norm;
    e.cand.n_tokens = n_tokens;
    e.score.combined = combined;
    return e;
}

RankedList list_of(const std::string& doc_id,
                   std::vector<RankedEntry> entries) {
    RankedList l;
    l.doc_id = doc_id;
    l.entries = std::move(entries);
    return l;
}

Document text_doc(const std::string& id, const std::string& text) {
    Document d;
    d.id = id;
    d.abstract = text;
    tokenize(d);
    return d;
}

}  // namespace

TEST_CASE("lemmatize_token rules") {
    CHECK(lemmatize_token("networks") == "network");
    CHECK(lemmatize_token("systems") == "system");
    CHECK(lemmatize_token("studies") == "study");
    CHECK(lemmatize_token("classes") == "class");
    CHECK(lemmatize_token("boxes") == "box");
    CHECK(lemmatize_token("matches") == "match");
    CHECK(lemmatize_token("analyses") == "analysis");
    CHECK(lemmatize_token("corpora") == "corpus");
    CHECK(lemmatize_token("class") == "class");
    CHECK(lemmatize_token("corpus") == "corpus");
    CHECK(lemmatize_token("analysis") == "analysis");
    CHECK(lemmatize_token("network") == "network");
}

TEST_CASE("lemmatization is idempotent") {
    for (const char* w :
         {"networks", "studies", "analyses", "boxes", "data", "model"}) {
        std::string once = lemmatize_token(w);
        CHECK(lemmatize_token(once) == once);
    }
}

TEST_CASE("lemma_dedup keeps the higher score") {
    auto l = lemma_dedup(list_of(
        "d", {entry("neural network", 0.6), entry("neural networks", 0.4),
              entry("fuzzy systems", 0.5)}));
    REQUIRE(l.entries.size() == 2);
    CHECK(l.entries[0].cand.norm == "neural network");
    CHECK(l.entries[0].score.combined == doctest::Approx(0.6));
    CHECK(l.entries[1].cand.norm == "fuzzy system");
}

TEST_CASE("lemma_dedup without collisions is the identity") {
    auto in = list_of("d", {entry("model", 0.9), entry("graph", 0.1)});
    auto out = lemma_dedup(in);
    REQUIRE(out.entries.size() == 2);
    CHECK(out.entries[0].cand.norm == "model");
    CHECK(out.entries[1].cand.norm == "graph");
}

TEST_CASE("aggregate_ranks") {
    SUBCASE("mean rank over appearing documents") {
        // phrase p ranks 3 in A (needs fillers) and 7 in B
        std::vector<RankedEntry> a, b;
        for (int i = 0; i < 10; ++i)
            a.push_back(entry("fa" + std::to_string(i), 1.0 - 0.01 * i, "A"));
        a.insert(a.begin() + 2, entry("p q", 0.95, "A"));
        for (int i = 0; i < 10; ++i)
            b.push_back(entry("fb" + std::to_string(i), 1.0 - 0.01 * i, "B"));
        b.insert(b.begin() + 6, entry("p q", 0.9, "B"));
        auto out =
            aggregate_ranks({list_of("A", a), list_of("B", b)}, 15);
        bool found = false;
        for (const auto& g : out)
            if (g.canonical == "p q") {
                found = true;
                CHECK(g.avg_rank == doctest::Approx(5.0));
                CHECK(g.doc_ids.size() == 2);
            }
        CHECK(found);
    }
    SUBCASE("rank beyond cutoff in every document excludes") {
        std::vector<RankedEntry> a;
        for (int i = 0; i < 25; ++i)
            a.push_back(entry("f" + std::to_string(i + 10), 1.0 - 0.01 * i, "A"));
        a.push_back(entry("low phrase", 0.0, "A"));  // rank 26
        auto out = aggregate_ranks({list_of("A", a)}, 15);
        for (const auto& g : out) CHECK(g.canonical != "low phrase");
    }
    SUBCASE("qualification is per-document, averaging is global") {
        // rank 10 in A, rank 40 in B -> selected, avg 25
        std::vector<RankedEntry> a, b;
        for (int i = 0; i < 9; ++i)
            a.push_back(entry("fa" + std::to_string(i), 1.0 - 0.01 * i, "A"));
        a.push_back(entry("p q", 0.5, "A"));  // rank 10
        for (int i = 0; i < 39; ++i)
            b.push_back(entry("fb" + std::to_string(i), 1.0 - 0.01 * i, "B"));
        b.push_back(entry("p q", 0.0, "B"));  // rank 40
        auto out = aggregate_ranks({list_of("A", a), list_of("B", b)}, 15);
        bool found = false;
        for (const auto& g : out)
            if (g.canonical == "p q") {
                found = true;
                CHECK(g.avg_rank == doctest::Approx(25.0));
            }
        CHECK(found);
    }
    SUBCASE("output totally ordered and deterministic") {
        std::vector<RankedEntry> a = {entry("b b", 0.5, "A"),
                                      entry("a a", 0.5, "A"),
                                      entry("c c", 0.4, "A")};
        auto out = aggregate_ranks({list_of("A", a)}, 15);
        auto out2 = aggregate_ranks({list_of("A", a)}, 15);
        REQUIRE(out.size() == out2.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i].canonical == out2[i].canonical);
        for (std::size_t i = 1; i < out.size(); ++i)
            CHECK(out[i - 1].avg_rank <= out[i].avg_rank);
    }
}

TEST_CASE("expand_acronyms") {
    auto g = [](const std::string& canonical, double rank) {
        GlobalKeyphrase k;
        k.canonical = canonical;
        k.avg_rank = rank;
        k.doc_ids = {"d1"};
        return k;
    };
    SUBCASE("replacement by lemmatized long form") {
        std::vector<GlobalKeyphrase> ks = {g("xai", 2.0)};
        std::vector<AcronymEntry> acr = {
            {"XAI", "explainable artificial intelligence", "d1"}};
        expand_acronyms(ks, acr);
        REQUIRE(ks.size() == 1);
        CHECK(ks[0].canonical == "explainable artificial intelligence");
    }
    SUBCASE("no stored entry leaves the phrase alone") {
        std::vector<GlobalKeyphrase> ks = {g("cnn", 2.0)};
        expand_acronyms(ks, {});
        CHECK(ks[0].canonical == "cnn");
    }
    SUBCASE("expansion merges with an existing long-form entry") {
        std::vector<GlobalKeyphrase> ks = {
            g("neural network", 5.0), g("nn", 2.0)};
        ks[0].doc_ids = {"d1"};
        ks[1].doc_ids = {"d2"};
        std::vector<AcronymEntry> acr = {{"NN", "neural networks", "d2"}};
        expand_acronyms(ks, acr);
        REQUIRE(ks.size() == 1);
        CHECK(ks[0].canonical == "neural network");
        CHECK(ks[0].avg_rank == doctest::Approx(2.0));  // better rank kept
        CHECK(ks[0].doc_ids.size() == 2);
    }
    SUBCASE("conflicting definitions warn") {
        std::vector<GlobalKeyphrase> ks = {g("ml", 1.0)};
        std::vector<AcronymEntry> acr = {
            {"ML", "machine learning", "d1"},
            {"ML", "maximum likelihood", "d2"}};
        CHECK(expand_acronyms(ks, acr) == 1);
    }
}

TEST_CASE("tfidf_filter") {
    auto g = [](const std::string& canonical) {
        GlobalKeyphrase k;
        k.canonical = canonical;
        k.avg_rank = 1.0;
        return k;
    };
    std::vector<Document> docs;
    docs.push_back(text_doc("d1", "alpha beta alpha gamma shared"));
    docs.push_back(text_doc("d2", "delta epsilon shared"));
    docs.push_back(text_doc("d3", "alpha zeta shared"));

    SUBCASE("10 phrases, fraction 0.2 removes the 2 lowest") {
        // p_i occurs i times in one document: strictly increasing tfidf
        std::string text;
        for (int i = 1; i <= 10; ++i)
            for (int r = 0; r < i; ++r) text += "p" + std::to_string(i) + " ";
        std::vector<Document> two = {text_doc("a", text),
                                     text_doc("b", "filler text only")};
        std::vector<GlobalKeyphrase> ks;
        for (int i = 1; i <= 10; ++i) ks.push_back(g("p" + std::to_string(i)));
        auto out = tfidf_filter(ks, two, 0.2);
        CHECK(out.size() == 8);
        for (const auto& k : out) {
            CHECK(k.canonical != "p1");
            CHECK(k.canonical != "p2");
            CHECK(k.tfidf >= 0.0);
        }
    }
    SUBCASE("single phrase, floor(0.2) removes none") {
        auto out = tfidf_filter({g("alpha")}, docs, 0.2);
        CHECK(out.size() == 1);
    }
    SUBCASE("ties at the boundary are kept") {
        // three phrases with identical (zero) tfidf: cut=0.34*3 -> 1,
        // but boundary tie keeps all
        std::vector<GlobalKeyphrase> ks = {g("missa"), g("missb"), g("missc")};
        auto out = tfidf_filter(ks, docs, 0.34);
        CHECK(out.size() == 3);
    }
    SUBCASE("phrase in every doc has idf zero and drops first") {
        std::vector<GlobalKeyphrase> ks = {g("shared"), g("alpha"), g("beta"),
                                           g("delta"), g("gamma")};
        auto out = tfidf_filter(ks, docs, 0.2);
        CHECK(out.size() == 4);
        for (const auto& k : out) CHECK(k.canonical != "shared");
    }
}

TEST_CASE("full rule pipeline is stable under re-lemmatization") {
    auto l = lemma_dedup(list_of(
        "d", {entry("neural networks", 0.9), entry("deep models", 0.8)}));
    for (const auto& e : l.entries)
        CHECK(lemmatize_phrase(e.cand.norm) == e.cand.norm);
}
