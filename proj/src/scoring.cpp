#include "kex/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kex {

namespace {

std::string join(const std::vector<std::string>& toks, std::size_t b,
                 std::size_t e) {
    std::string s;
    for (std::size_t i = b; i < e; ++i) {
        if (i > b) s += ' ';
        s += toks[i];
    }
    return s;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

double entropy_of_counts(const std::unordered_map<std::string, long>& counts) {
    long total = 0;
    for (const auto& [k, c] : counts) total += c;
    if (total == 0) return 0.0;
    double h = 0.0;
    for (const auto& [k, c] : counts) {
        double p = double(c) / double(total);
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

NgramCounts::NgramCounts(const std::vector<Document>& docs, int max_n)
    : max_n_(max_n), counts_(max_n), totals_(max_n, 0) {
    for (const Document& d : docs) {
        const long t = long(d.tokens.size());
        for (int n = 1; n <= max_n; ++n) {
            if (t < n) continue;
            totals_[n - 1] += t - n + 1;
            for (long i = 0; i + n <= t; ++i) {
                std::string key = d.tokens[i].norm;
                for (long j = 1; j < n; ++j) key += ' ' + d.tokens[i + j].norm;
                ++counts_[n - 1][key];
            }
        }
    }
}

long NgramCounts::count(const std::vector<std::string>& gram) const {
    int n = int(gram.size());
    if (n < 1 || n > max_n_) return 0;
    auto it = counts_[n - 1].find(join(gram, 0, gram.size()));
    return it == counts_[n - 1].end() ? 0 : it->second;
}

long NgramCounts::total(int n) const {
    if (n < 1 || n > max_n_) return 0;
    return totals_[n - 1];
}

PmiResult pmi_min(const std::vector<std::string>& tokens,
                  const NgramCounts& counts) {
    const int n = int(tokens.size());
    if (n < 2)
        throw std::invalid_argument("pmi_min requires a multiword phrase");

    long c_full = counts.count(tokens);
    long t_full = counts.total(n);
    if (c_full == 0 || t_full == 0) return {false, 0.0};
    double p_full = double(c_full) / double(t_full);

    PmiResult result{true, std::numeric_limits<double>::infinity()};
    for (int split = 1; split < n; ++split) {
        std::vector<std::string> x(tokens.begin(), tokens.begin() + split);
        std::vector<std::string> y(tokens.begin() + split, tokens.end());
        long cx = counts.count(x), cy = counts.count(y);
        long tx = counts.total(split), ty = counts.total(n - split);
        if (cx == 0 || cy == 0 || tx == 0 || ty == 0) return {false, 0.0};
        double px = double(cx) / double(tx);
        double py = double(cy) / double(ty);
        result.value = std::min(result.value, std::log2(p_full / (px * py)));
    }
    return result;
}

double lr_entropy(const std::vector<std::string>& tokens,
                  const std::vector<Document>& docs) {
    static const std::string kBoundary = "\x01";
    std::unordered_map<std::string, long> left, right;
    long occurrences = 0;
    const std::size_t n = tokens.size();
    for (const Document& d : docs) {
        const auto& ts = d.tokens;
        if (ts.size() < n) continue;
        for (std::size_t i = 0; i + n <= ts.size(); ++i) {
            bool match = true;
            for (std::size_t j = 0; j < n; ++j)
                if (ts[i + j].norm != tokens[j]) {
                    match = false;
                    break;
                }
            if (!match) continue;
            ++occurrences;
            ++left[i == 0 ? kBoundary : ts[i - 1].norm];
            ++right[i + n == ts.size() ? kBoundary : ts[i + n].norm];
        }
    }
    if (occurrences == 0)
        throw std::runtime_error("lr_entropy: phrase never occurs in corpus");
    return std::min(entropy_of_counts(left), entropy_of_counts(right));
}

double length_penalty(int n_tokens, bool is_acronym) {
    if (n_tokens == 1) return is_acronym ? 0.0 : -1.0;
    if (n_tokens <= 3) return 0.0;
    return -0.5 * std::abs(n_tokens - 3);
}

Glossary Glossary::load(const std::string& path, const EmbeddingTable& table) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open glossary file: " + path);
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace((unsigned char)line.back()))
            line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && std::isspace((unsigned char)line[b])) ++b;
        if (b < line.size()) terms.push_back(line.substr(b));
    }
    return from_terms(terms, table);
}

Glossary Glossary::from_terms(const std::vector<std::string>& terms,
                              const EmbeddingTable& table) {
    Glossary g;
    for (const std::string& t : terms) {
        auto v = embed_phrase(t, table);
        if (!v) {
            ++g.skipped_;
            continue;
        }
        g.terms_.push_back(t);
        g.vectors_.push_back(std::move(*v));
    }
    return g;
}

double document_relevance(const CandidatePhrase& cand,
                          const std::optional<Vector>& cand_vec,
                          const Vector& doc_vec, double title_boost) {
    if (!cand_vec) return 0.0;
    double base = cosine(*cand_vec, doc_vec);
    if (cand.in_title) base *= 1.0 + title_boost * cand.n_tokens;
    return base;
}

double domain_relevance(const std::optional<Vector>& cand_vec,
                        const Glossary& glossary, double top_fraction) {
    if (glossary.empty())
        throw std::runtime_error("domain scoring enabled with empty glossary");
    if (!cand_vec) return 0.0;
    std::vector<double> sims;
    sims.reserve(glossary.size());
    for (const Vector& g : glossary.vectors())
        sims.push_back(cosine(*cand_vec, g));
    std::size_t top = std::size_t(
        std::ceil(top_fraction * double(glossary.size())));
    top = std::clamp<std::size_t>(top, 1, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + top, sims.end(),
                      std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < top; ++i) sum += sims[i];
    return sum / double(top);
}

double combined_score(const ScoreBreakdown& b, double w_domain,
                      double w_quality) {
    return b.doc_rel + w_domain * b.domain_rel + w_quality * b.quality;
}

CorpusScorer::CorpusScorer(
    const std::vector<Document>& docs,
    const std::vector<std::vector<CandidatePhrase>>& candidates,
    const EmbeddingTable& table, const SifWeights& sif,
    const Glossary* glossary, const ScoringParams& params)
    : docs_(docs),
      candidates_(candidates),
      table_(table),
      glossary_(glossary),
      params_(params) {
    if (docs.size() != candidates.size())
        throw std::invalid_argument("docs/candidates size mismatch");

    int max_n = 2;
    for (const auto& list : candidates)
        for (const auto& c : list) max_n = std::max(max_n, c.n_tokens);
    ngrams_ = NgramCounts(docs, max_n);

    // corpus-wide quality pool keyed by candidate norm
    for (const auto& list : candidates) {
        for (const auto& c : list) {
            if (quality_.count(c.norm)) continue;
            QualityParts parts;
            auto toks = split_ws(c.norm);
            parts.entropy = lr_entropy(toks, docs);
            if (toks.size() >= 2) {
                parts.pmi = pmi_min(toks, ngrams_);
                parts.survives =
                    parts.pmi.defined && parts.pmi.value >= params_.pmi_threshold;
            } else {
                parts.survives = true;  // unigrams bypass the PMI gate
            }
            quality_.emplace(c.norm, std::move(parts));
        }
    }

    // min-max normalize entropy over the surviving pool
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [norm, p] : quality_) {
        if (!p.survives) continue;
        lo = std::min(lo, p.entropy);
        hi = std::max(hi, p.entropy);
    }
    for (auto& [norm, p] : quality_) {
        if (!p.survives) continue;
        p.norm_entropy = hi > lo ? (p.entropy - lo) / (hi - lo) : 1.0;
    }

    doc_vecs_.resize(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        doc_vecs_[i] = embed_document_sif(docs[i].tokens, table, sif);
        if (!doc_vecs_[i]) ++unembeddable_docs_;
    }
}

const CorpusScorer::QualityParts& CorpusScorer::quality_parts(
    const std::string& norm) const {
    auto it = quality_.find(norm);
    if (it == quality_.end())
        throw std::out_of_range("unknown candidate norm: " + norm);
    return it->second;
}

RankedList CorpusScorer::rank_document(std::size_t doc_index) const {
    RankedList list;
    list.doc_id = docs_[doc_index].id;
    for (const CandidatePhrase& c : candidates_[doc_index]) {
        ScoreBreakdown b;
        auto cand_vec = embed_phrase(c.norm, table_);
        if (doc_vecs_[doc_index])
            b.doc_rel = document_relevance(c, cand_vec, *doc_vecs_[doc_index],
                                           params_.title_boost);
        if (glossary_ && !glossary_->empty())
            b.domain_rel =
                domain_relevance(cand_vec, *glossary_, params_.top_fraction);

        const QualityParts& q = quality_parts(c.norm);
        b.pmi_defined = q.pmi.defined;
        b.pmi_min = q.pmi.value;
        b.entropy = q.entropy;
        b.length_penalty = length_penalty(c.n_tokens, c.is_acronym);
        double component = q.survives ? q.norm_entropy : 0.0;
        b.quality = component + b.length_penalty;
        b.combined = combined_score(b, params_.w_domain, params_.w_quality);
        list.entries.push_back({c, b});
    }
    std::stable_sort(list.entries.begin(), list.entries.end(),
                     [](const RankedEntry& a, const RankedEntry& b) {
                         if (a.score.combined != b.score.combined)
                             return a.score.combined > b.score.combined;
                         return a.cand.norm < b.cand.norm;
                     });
    return list;
}

std::vector<RankedList> CorpusScorer::rank_all() const {
    std::vector<RankedList> out;
    out.reserve(docs_.size());
    for (std::size_t i = 0; i < docs_.size(); ++i)
        out.push_back(rank_document(i));
    return out;
}

}  // namespace kex
