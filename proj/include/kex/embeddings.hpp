#ifndef KEX_EMBEDDINGS_HPP
#define KEX_EMBEDDINGS_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kex/corpus.hpp"

namespace kex {

using Vector = std::vector<double>;

double dot(const Vector& u, const Vector& v);
double norm(const Vector& v);
// Throws on zero vectors; result clamped to [-1, 1].
double cosine(const Vector& u, const Vector& v);
void normalize(Vector& v);

// Immutable token/term -> vector map loaded from word2vec text format.
// Multiword keys use '_' as the internal joiner.
class EmbeddingTable {
public:
    // Header "count dim", then "key v1 ... v_dim" per line. Transparent
    // gzip decompression. Keys lowercased; optional URI prefix stripped;
    // first occurrence wins on duplicates.
    static EmbeddingTable load(const std::string& path,
                               const std::string& strip_prefix = "");

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    int duplicate_warnings() const { return duplicate_warnings_; }

    const Vector* find(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    void insert(const std::string& key, Vector v);  // test construction

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, Vector> entries_;
    int duplicate_warnings_ = 0;
};

struct SifWeights {
    double a = 1e-3;
    std::unordered_map<std::string, double> term_prob;

    double weight(const std::string& token) const {
        auto it = term_prob.find(token);
        double p = it == term_prob.end() ? 0.0 : it->second;
        return a / (a + p);
    }

    static SifWeights from_corpus(const std::vector<Document>& docs,
                                  double a = 1e-3);
    // token<TAB>count lines
    static SifWeights from_frequency_file(const std::string& path,
                                          double a = 1e-3);
};

// Greedy left-to-right longest-match segmentation over table keys,
// averaging the matched segments. nullopt when nothing matches.
std::optional<Vector> embed_phrase(const std::string& phrase_norm,
                                   const EmbeddingTable& table);

// SIF-weighted mean over in-vocabulary non-stopword tokens.
std::optional<Vector> embed_document_sif(const std::vector<Token>& tokens,
                                         const EmbeddingTable& table,
                                         const SifWeights& sif);

}  // namespace kex

#endif
