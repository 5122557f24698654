#ifndef KEX_POSTPROCESS_HPP
#define KEX_POSTPROCESS_HPP

#include <set>
#include <string>
#include <vector>

#include "kex/candidates.hpp"
#include "kex/scoring.hpp"

namespace kex {

// Rule lemmatizer: irregulars table, then -ies -> y,
// -ses/-xes/-zes/-ches/-shes -> strip es, -s -> strip.
std::string lemmatize_token(const std::string& token);
std::string lemmatize_phrase(const std::string& norm);

struct GlobalKeyphrase {
    std::string canonical;  // lemmatized, acronym-expanded, lowercase
    double avg_rank = 0.0;
    std::set<std::string> doc_ids;
    double best_combined = 0.0;
    double tfidf = 0.0;
};

// Rule 1: merge inflectional variants, keeping the higher score; the
// entry's norm is rewritten to the lemma and ranks are recomputed.
RankedList lemma_dedup(const RankedList& list);

// Rule 2: a phrase qualifies when ranked <= cutoff_rank in at least one
// document; avg_rank is taken over every document where it appears.
std::vector<GlobalKeyphrase> aggregate_ranks(
    const std::vector<RankedList>& lists, int cutoff_rank);

// Rule 3: replace acronym canonicals by their lemmatized long forms,
// merging with an existing long-form entry when present. Returns the
// number of conflicting-definition warnings.
int expand_acronyms(std::vector<GlobalKeyphrase>& keyphrases,
                    const std::vector<AcronymEntry>& acronyms);

// Rule 4: drop the floor(drop_fraction * count) lowest-TF-IDF entries;
// ties at the cut boundary are kept.
std::vector<GlobalKeyphrase> tfidf_filter(std::vector<GlobalKeyphrase> phrases,
                                          const std::vector<Document>& docs,
                                          double drop_fraction);

}  // namespace kex

#endif
