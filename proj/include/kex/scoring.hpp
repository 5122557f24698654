#ifndef KEX_SCORING_HPP
#define KEX_SCORING_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kex/candidates.hpp"
#include "kex/corpus.hpp"
#include "kex/embeddings.hpp"

namespace kex {

// n-gram frequencies over the corpus token stream (per-document streams,
// n-grams never cross document boundaries).
class NgramCounts {
public:
    NgramCounts() = default;
    NgramCounts(const std::vector<Document>& docs, int max_n);

    long count(const std::vector<std::string>& gram) const;
    long total(int n) const;  // number of n-gram positions in the stream
    int max_n() const { return max_n_; }

private:
    int max_n_ = 0;
    std::vector<std::unordered_map<std::string, long>> counts_;  // [n-1]
    std::vector<long> totals_;
};

struct PmiResult {
    bool defined = false;  // false: some split never co-occurs (-inf)
    double value = 0.0;
};

// Minimum over all prefix/suffix splits of log2(p(xy) / (p(x) p(y))).
// Tokens must have >= 2 elements.
PmiResult pmi_min(const std::vector<std::string>& tokens,
                  const NgramCounts& counts);

// Min of left- and right-adjacent Shannon entropies over all occurrences
// of the phrase in the corpus token streams; stream boundaries count as
// a distinguished symbol. Throws if the phrase never occurs.
double lr_entropy(const std::vector<std::string>& tokens,
                  const std::vector<Document>& docs);

double length_penalty(int n_tokens, bool is_acronym);

struct ScoreBreakdown {
    double doc_rel = 0.0;
    double domain_rel = 0.0;
    double pmi_min = 0.0;
    bool pmi_defined = false;
    double entropy = 0.0;
    double length_penalty = 0.0;
    double quality = 0.0;
    double combined = 0.0;
};

class Glossary {
public:
    // One lowercase term per line; terms without any embedding are
    // skipped (counted as warnings).
    static Glossary load(const std::string& path, const EmbeddingTable& table);
    static Glossary from_terms(const std::vector<std::string>& terms,
                               const EmbeddingTable& table);

    bool empty() const { return vectors_.empty(); }
    std::size_t size() const { return vectors_.size(); }
    int skipped_terms() const { return skipped_; }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<Vector>& vectors() const { return vectors_; }

private:
    std::vector<std::string> terms_;
    std::vector<Vector> vectors_;
    int skipped_ = 0;
};

double document_relevance(const CandidatePhrase& cand,
                          const std::optional<Vector>& cand_vec,
                          const Vector& doc_vec, double title_boost);

// Mean of the ceil(top_fraction * |glossary|) highest cosine
// similarities between the candidate and the glossary terms.
double domain_relevance(const std::optional<Vector>& cand_vec,
                        const Glossary& glossary, double top_fraction);

double combined_score(const ScoreBreakdown& b, double w_domain,
                      double w_quality);

struct ScoringParams {
    double w_domain = 0.1;
    double w_quality = 0.1;
    double title_boost = 0.1;
    double top_fraction = 0.5;
    double pmi_threshold = 2.0;
};

struct RankedEntry {
    CandidatePhrase cand;
    ScoreBreakdown score;
};

struct RankedList {
    std::string doc_id;
    std::vector<RankedEntry> entries;  // combined desc, ties by norm
};

// Corpus-level scorer: builds n-gram counts, the PMI/entropy pools and
// the entropy normalization bounds once, then ranks each document.
class CorpusScorer {
public:
    CorpusScorer(const std::vector<Document>& docs,
                 const std::vector<std::vector<CandidatePhrase>>& candidates,
                 const EmbeddingTable& table, const SifWeights& sif,
                 const Glossary* glossary, const ScoringParams& params);

    RankedList rank_document(std::size_t doc_index) const;
    std::vector<RankedList> rank_all() const;

    int unembeddable_documents() const { return unembeddable_docs_; }

    // per-norm corpus-level components, exposed for inspection
    struct QualityParts {
        PmiResult pmi;
        double entropy = 0.0;
        bool survives = false;       // passes the PMI gate (or unigram)
        double norm_entropy = 0.0;   // min-max over surviving pool
    };
    const QualityParts& quality_parts(const std::string& norm) const;

private:
    const std::vector<Document>& docs_;
    const std::vector<std::vector<CandidatePhrase>>& candidates_;
    const EmbeddingTable& table_;
    const Glossary* glossary_;
    ScoringParams params_;
    NgramCounts ngrams_;
    std::map<std::string, QualityParts> quality_;
    std::vector<std::optional<Vector>> doc_vecs_;
    int unembeddable_docs_ = 0;
};

}  // namespace kex

#endif
