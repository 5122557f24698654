#include "kex/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace kex {

namespace {

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() &&
           s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

const std::unordered_map<std::string, std::string>& irregulars() {
    static const std::unordered_map<std::string, std::string> table = {
        {"analyses", "analysis"},   {"hypotheses", "hypothesis"},
        {"theses", "thesis"},       {"bases", "basis"},
        {"indices", "index"},       {"matrices", "matrix"},
        {"vertices", "vertex"},     {"criteria", "criterion"},
        {"phenomena", "phenomenon"},{"corpora", "corpus"},
        {"taxonomies", "taxonomy"}, {"children", "child"},
        {"men", "man"},             {"women", "woman"},
        {"people", "person"},       {"feet", "foot"},
        {"teeth", "tooth"},         {"mice", "mouse"},
        {"geese", "goose"},         {"data", "data"},
        {"media", "media"},         {"series", "series"},
        {"species", "species"}};
    return table;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

std::string join_ws(const std::vector<std::string>& toks) {
    std::string s;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) s += ' ';
        s += toks[i];
    }
    return s;
}

// long forms may still carry dashes from the raw text; align them with
// the dash-split token stream before lemmatizing
std::string normalize_long_form(const std::string& long_form) {
    std::string s = long_form;
    for (char& c : s)
        if (c == '-') c = ' ';
    return lemmatize_phrase(s);
}

bool global_order(const GlobalKeyphrase& a, const GlobalKeyphrase& b) {
    if (a.avg_rank != b.avg_rank) return a.avg_rank < b.avg_rank;
    if (a.best_combined != b.best_combined)
        return a.best_combined > b.best_combined;
    return a.canonical < b.canonical;
}

}  // namespace

std::string lemmatize_token(const std::string& token) {
    auto it = irregulars().find(token);
    if (it != irregulars().end()) return it->second;
    if (token.size() > 4 && ends_with(token, "ies"))
        return token.substr(0, token.size() - 3) + "y";
    for (const char* suf : {"ses", "xes", "zes", "ches", "shes"})
        if (token.size() > strlen(suf) + 1 && ends_with(token, suf))
            return token.substr(0, token.size() - 2);
    if (token.size() > 3 && token.back() == 's' && !ends_with(token, "ss") &&
        !ends_with(token, "us") && !ends_with(token, "is"))
        return token.substr(0, token.size() - 1);
    return token;
}

std::string lemmatize_phrase(const std::string& norm) {
    auto toks = split_ws(norm);
    for (auto& t : toks) t = lemmatize_token(t);
    return join_ws(toks);
}

RankedList lemma_dedup(const RankedList& list) {
    RankedList out;
    out.doc_id = list.doc_id;
    std::unordered_map<std::string, std::size_t> by_lemma;
    for (const RankedEntry& e : list.entries) {
        std::string lemma = lemmatize_phrase(e.cand.norm);
        auto it = by_lemma.find(lemma);
        if (it == by_lemma.end()) {
            by_lemma.emplace(lemma, out.entries.size());
            RankedEntry copy = e;
            copy.cand.norm = lemma;
            out.entries.push_back(std::move(copy));
        } else {
            RankedEntry& kept = out.entries[it->second];
            if (e.score.combined > kept.score.combined) {
                std::string id = kept.cand.doc_id;
                kept = e;
                kept.cand.norm = lemma;
                kept.cand.doc_id = id;
            }
        }
    }
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const RankedEntry& a, const RankedEntry& b) {
                         if (a.score.combined != b.score.combined)
                             return a.score.combined > b.score.combined;
                         return a.cand.norm < b.cand.norm;
                     });
    return out;
}

std::vector<GlobalKeyphrase> aggregate_ranks(
    const std::vector<RankedList>& lists, int cutoff_rank) {
    struct Acc {
        long rank_sum = 0;
        int n = 0;
        bool qualified = false;
        double best_combined = -std::numeric_limits<double>::infinity();
        std::set<std::string> doc_ids;
    };
    std::map<std::string, Acc> acc;
    for (const RankedList& list : lists) {
        for (std::size_t i = 0; i < list.entries.size(); ++i) {
            const RankedEntry& e = list.entries[i];
            int rank = int(i) + 1;
            Acc& a = acc[e.cand.norm];
            a.rank_sum += rank;
            ++a.n;
            a.qualified = a.qualified || rank <= cutoff_rank;
            a.best_combined = std::max(a.best_combined, e.score.combined);
            a.doc_ids.insert(list.doc_id);
        }
    }
    std::vector<GlobalKeyphrase> out;
    for (const auto& [norm, a] : acc) {
        if (!a.qualified) continue;
        GlobalKeyphrase g;
        g.canonical = norm;
        g.avg_rank = double(a.rank_sum) / double(a.n);
        g.doc_ids = a.doc_ids;
        g.best_combined = a.best_combined;
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), global_order);
    return out;
}

int expand_acronyms(std::vector<GlobalKeyphrase>& keyphrases,
                    const std::vector<AcronymEntry>& acronyms) {
    int warnings = 0;
    std::map<std::string, std::map<std::string, int>> forms;  // short -> long -> n
    for (const AcronymEntry& a : acronyms) {
        std::string key = a.short_form;
        std::transform(key.begin(), key.end(), key.begin(), ::tolower);
        ++forms[key][normalize_long_form(a.long_form)];
    }
    std::map<std::string, std::string> expansion;
    for (const auto& [s, longs] : forms) {
        if (longs.size() > 1) ++warnings;
        auto best = std::max_element(
            longs.begin(), longs.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second < b.second;
                return a.first > b.first;
            });
        expansion[s] = best->first;
    }

    std::map<std::string, std::size_t> by_canonical;
    for (std::size_t i = 0; i < keyphrases.size(); ++i)
        by_canonical[keyphrases[i].canonical] = i;

    std::vector<bool> dead(keyphrases.size(), false);
    for (std::size_t i = 0; i < keyphrases.size(); ++i) {
        auto exp = expansion.find(keyphrases[i].canonical);
        if (exp == expansion.end()) continue;
        auto existing = by_canonical.find(exp->second);
        if (existing != by_canonical.end() && existing->second != i) {
            GlobalKeyphrase& target = keyphrases[existing->second];
            target.avg_rank = std::min(target.avg_rank, keyphrases[i].avg_rank);
            target.best_combined =
                std::max(target.best_combined, keyphrases[i].best_combined);
            target.doc_ids.insert(keyphrases[i].doc_ids.begin(),
                                  keyphrases[i].doc_ids.end());
            dead[i] = true;
        } else {
            by_canonical.erase(keyphrases[i].canonical);
            keyphrases[i].canonical = exp->second;
            by_canonical[exp->second] = i;
        }
    }
    std::vector<GlobalKeyphrase> kept;
    for (std::size_t i = 0; i < keyphrases.size(); ++i)
        if (!dead[i]) kept.push_back(std::move(keyphrases[i]));
    std::sort(kept.begin(), kept.end(), global_order);
    keyphrases = std::move(kept);
    return warnings;
}

std::vector<GlobalKeyphrase> tfidf_filter(std::vector<GlobalKeyphrase> phrases,
                                          const std::vector<Document>& docs,
                                          double drop_fraction) {
    if (phrases.empty() || drop_fraction <= 0.0) return phrases;

    // lemmatized token streams, once per document
    std::vector<std::vector<std::string>> lemmas(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        lemmas[d].reserve(docs[d].tokens.size());
        for (const Token& t : docs[d].tokens)
            lemmas[d].push_back(lemmatize_token(t.norm));
    }

    const double n_docs = double(docs.size());
    for (GlobalKeyphrase& g : phrases) {
        auto want = split_ws(g.canonical);
        std::vector<long> tfs;
        for (const auto& stream : lemmas) {
            long tf = 0;
            if (stream.size() >= want.size()) {
                for (std::size_t i = 0; i + want.size() <= stream.size(); ++i) {
                    bool m = true;
                    for (std::size_t j = 0; j < want.size(); ++j)
                        if (stream[i + j] != want[j]) {
                            m = false;
                            break;
                        }
                    if (m) ++tf;
                }
            }
            if (tf > 0) tfs.push_back(tf);
        }
        if (tfs.empty()) {
            g.tfidf = 0.0;
            continue;
        }
        double idf = std::log(n_docs / double(tfs.size()));
        double sum = 0.0;
        for (long tf : tfs) sum += double(tf) * idf;
        g.tfidf = sum / double(tfs.size());
    }

    std::vector<std::size_t> order(phrases.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return phrases[a].tfidf < phrases[b].tfidf;
                     });
    std::size_t cut =
        std::size_t(std::floor(drop_fraction * double(phrases.size())));
    std::vector<bool> drop(phrases.size(), false);
    if (cut > 0 && cut < phrases.size()) {
        double boundary = phrases[order[cut]].tfidf;
        for (std::size_t i = 0; i < cut; ++i)
            if (phrases[order[i]].tfidf < boundary) drop[order[i]] = true;
    }
    std::vector<GlobalKeyphrase> kept;
    for (std::size_t i = 0; i < phrases.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(phrases[i]));
    return kept;
}

}  // namespace kex
