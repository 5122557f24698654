#include "kex/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kex/postprocess.hpp"

namespace kex {

std::string normalize_term(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s) {
        if (c == '-') c = ' ';
        t += char(std::tolower((unsigned char)c));
    }
    std::istringstream ss(t);
    std::string tok, out;
    while (ss >> tok) {
        // mirror the tokenizer: strip surrounding punctuation
        std::size_t b = 0, e = tok.size();
        while (b < e && std::ispunct((unsigned char)tok[b])) ++b;
        while (e > b && std::ispunct((unsigned char)tok[e - 1])) --e;
        if (b >= e) continue;
        if (!out.empty()) out += ' ';
        out += lemmatize_token(tok.substr(b, e - b));
    }
    return out;
}

Prf prf_at_k(const std::vector<std::string>& predicted,
             const std::vector<std::string>& gold, int k) {
    if (k < 1) throw std::invalid_argument("prf_at_k: k must be >= 1");

    std::vector<std::string> top;
    std::set<std::string> seen;
    for (const std::string& p : predicted) {
        std::string n = normalize_term(p);
        if (n.empty() || !seen.insert(n).second) continue;
        top.push_back(n);
        if (int(top.size()) == k) break;
    }
    std::set<std::string> gold_set;
    for (const std::string& g : gold) {
        std::string n = normalize_term(g);
        if (!n.empty()) gold_set.insert(n);
    }

    Prf r;
    if (gold_set.empty() || top.empty()) return r;
    int matched = 0;
    for (const std::string& p : top)
        if (gold_set.count(p)) ++matched;
    r.precision = double(matched) / double(std::min<std::size_t>(k, top.size()));
    r.recall = double(matched) / double(gold_set.size());
    if (r.precision + r.recall > 0.0)
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

EvalReport evaluate(
    const std::vector<std::pair<std::vector<std::string>,
                                std::vector<std::string>>>& pred_gold,
    const std::vector<int>& ks) {
    EvalReport report;
    int max_k = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
    for (int k : ks) report.per_k[k] = Prf{};

    for (const auto& [predicted, gold] : pred_gold) {
        bool has_gold = false;
        for (const std::string& g : gold)
            if (!normalize_term(g).empty()) has_gold = true;
        if (!has_gold) continue;  // excluded from the macro-average
        ++report.n_docs;
        if (int(predicted.size()) < max_k) ++report.short_prediction_docs;
        for (int k : ks) {
            Prf p = prf_at_k(predicted, gold, k);
            report.per_k[k].precision += p.precision;
            report.per_k[k].recall += p.recall;
            report.per_k[k].f1 += p.f1;
        }
    }
    if (report.n_docs > 0) {
        for (auto& [k, p] : report.per_k) {
            p.precision /= report.n_docs;
            p.recall /= report.n_docs;
            p.f1 /= report.n_docs;
        }
    }
    return report;
}

CorpusStats corpus_stats(const std::vector<Document>& docs) {
    CorpusStats stats;
    long in_text = 0;
    long token_sum = 0;
    int docs_with_terms = 0;

    for (const Document& d : docs) {
        if (d.gold_terms.empty()) continue;
        ++docs_with_terms;

        std::vector<std::string> lemmas;
        lemmas.reserve(d.tokens.size());
        for (const Token& t : d.tokens)
            lemmas.push_back(lemmatize_token(t.norm));

        for (const std::string& term : d.gold_terms) {
            std::string n = normalize_term(term);
            if (n.empty()) continue;
            ++stats.total_terms;
            std::vector<std::string> want;
            {
                std::istringstream ss(n);
                std::string t;
                while (ss >> t) want.push_back(t);
            }
            token_sum += long(want.size());
            bool found = false;
            for (std::size_t i = 0;
                 !found && i + want.size() <= lemmas.size(); ++i) {
                bool m = true;
                for (std::size_t j = 0; j < want.size(); ++j)
                    if (lemmas[i + j] != want[j]) {
                        m = false;
                        break;
                    }
                found = m;
            }
            if (found) ++in_text;
        }
    }
    if (stats.total_terms == 0)
        throw std::runtime_error("corpus_stats: no gold terms in corpus");
    stats.pct_in_text = 100.0 * double(in_text) / double(stats.total_terms);
    stats.avg_tokens_per_term =
        double(token_sum) / double(stats.total_terms);
    stats.avg_terms_per_paper =
        double(stats.total_terms) / double(docs_with_terms);
    return stats;
}

}  // namespace kex
