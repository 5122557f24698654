#ifndef KEX_EVALUATION_HPP
#define KEX_EVALUATION_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "kex/corpus.hpp"

namespace kex {

// lowercase, dash -> space, whitespace collapse, rule lemmatization
std::string normalize_term(const std::string& s);

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Exact match on normalized forms; precision denominator is
// min(k, |predicted|). Inputs are normalized and deduplicated here.
Prf prf_at_k(const std::vector<std::string>& predicted,
             const std::vector<std::string>& gold, int k);

struct EvalReport {
    std::map<int, Prf> per_k;  // macro-averaged over documents
    int n_docs = 0;            // documents with gold terms
    int short_prediction_docs = 0;  // fewer predictions than max k
};

EvalReport evaluate(
    const std::vector<std::pair<std::vector<std::string>,
                                std::vector<std::string>>>& pred_gold,
    const std::vector<int>& ks);

struct CorpusStats {
    long total_terms = 0;
    double pct_in_text = 0.0;  // 0..100
    double avg_tokens_per_term = 0.0;
    double avg_terms_per_paper = 0.0;
};

// Throws when no document carries gold terms.
CorpusStats corpus_stats(const std::vector<Document>& docs);

}  // namespace kex

#endif
