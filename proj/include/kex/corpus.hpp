#ifndef KEX_CORPUS_HPP
#define KEX_CORPUS_HPP

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace kex {

enum class PosTag { NN, NNS, NNP, NNPS, JJ, OTHER };

inline bool is_noun_tag(PosTag t) {
    return t == PosTag::NN || t == PosTag::NNS || t == PosTag::NNP ||
           t == PosTag::NNPS;
}

struct Token {
    std::string surface;        // original case, punctuation stripped
    std::string norm;           // lowercase
    PosTag pos = PosTag::OTHER;
    bool pos_set = false;
    std::size_t char_offset = 0;
    bool from_title = false;
    bool is_stop = false;
    int sentence_id = 0;
};

struct Document {
    std::string id;
    std::string title;
    std::string abstract;
    std::vector<std::string> gold_terms;
    std::vector<std::string> pre_tags;  // optional Penn tags, JSONL "tags"
    std::vector<Token> tokens;

    // Title and abstract joined with a sentence break, dashes intact.
    std::string raw_text() const;
};

enum class CorpusFormat { jsonl, csv };

struct CorpusLoadResult {
    std::vector<Document> documents;
    int rejected_records = 0;   // records with empty title and abstract
};

// Throws std::runtime_error naming the offending record on malformed
// input or duplicate ids.
CorpusLoadResult load_corpus(const std::string& path, CorpusFormat format);

struct StopwordSet {
    std::unordered_set<std::string> words;

    bool contains(const std::string& norm) const {
        return words.count(norm) != 0;
    }
};

// One lowercase word per line; '#' starts a comment.
StopwordSet load_stopwords(const std::string& path);
StopwordSet builtin_stopwords();

// Fills doc.tokens from title + abstract. Dashes are replaced by spaces
// beforehand, so no token norm ever contains '-'.
void tokenize(Document& doc);

// Marks tokens whose norm is in the set; nothing is removed so chunk
// boundaries and n-gram statistics stay intact.
void flag_stopwords(std::vector<Token>& tokens, const StopwordSet& stop);

}  // namespace kex

#endif
