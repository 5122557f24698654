#ifndef KEX_CANDIDATES_HPP
#define KEX_CANDIDATES_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kex/corpus.hpp"

namespace kex {

struct CandidatePhrase {
    std::string doc_id;
    std::size_t start = 0;  // token index of first occurrence
    std::size_t end = 0;    // one past last token
    std::string surface;
    std::string norm;       // lowercase, space-joined token norms
    int n_tokens = 0;
    bool in_title = false;
    int count_in_doc = 1;
    bool is_acronym = false;
};

struct AcronymEntry {
    std::string short_form;  // case-sensitive, as written
    std::string long_form;   // lowercase expansion
    std::string doc_id;
};

// Word -> tag lexicon backing the built-in tagger. Unlisted words fall
// through to suffix/shape heuristics.
class PosLexicon {
public:
    static PosLexicon builtin();
    static PosLexicon load(const std::string& path);  // word<TAB>tag lines

    void add(const std::string& word, PosTag tag) { entries_[word] = tag; }
    std::optional<PosTag> find(const std::string& norm) const;

private:
    std::unordered_map<std::string, PosTag> entries_;
};

PosTag parse_pos_tag(const std::string& penn);

// external_tags, when given, must be parallel to tokens and wins over
// the built-in tagger.
void tag_pos(std::vector<Token>& tokens, const PosLexicon& lexicon,
             const std::vector<PosTag>* external_tags = nullptr);

// Maximal matches of (JJ|NN*)* NN* over non-stopword tokens within a
// sentence; occurrences with equal norms merge into one candidate.
std::vector<CandidatePhrase> chunk_noun_phrases(const Document& doc);

// Schwartz-Hearst matching on the raw case-preserved text, before dash
// removal and lowercasing.
std::vector<AcronymEntry> extract_acronyms(const std::string& raw_text,
                                           const std::string& doc_id);

std::vector<CandidatePhrase> collect_candidates(
    const Document& doc, const std::vector<AcronymEntry>& acronyms);

}  // namespace kex

#endif
