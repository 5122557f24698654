#include "kex/candidates.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kex {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() &&
           s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

PosTag parse_pos_tag(const std::string& penn) {
    if (penn == "NN") return PosTag::NN;
    if (penn == "NNS") return PosTag::NNS;
    if (penn == "NNP") return PosTag::NNP;
    if (penn == "NNPS") return PosTag::NNPS;
    if (penn.rfind("JJ", 0) == 0) return PosTag::JJ;
    if (penn.rfind("NN", 0) == 0) return PosTag::NN;
    return PosTag::OTHER;
}

std::optional<PosTag> PosLexicon::find(const std::string& norm) const {
    auto it = entries_.find(norm);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

PosLexicon PosLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open POS lexicon: " + path);
    PosLexicon lex;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        lex.add(lower(line.substr(0, tab)), parse_pos_tag(line.substr(tab + 1)));
    }
    return lex;
}

PosLexicon PosLexicon::builtin() {
    PosLexicon lex;
    static const char* kAdjectives[] = {
        "deep", "new", "novel", "large", "small", "high", "low", "good",
        "black", "white", "big", "main", "key", "common", "complex", "simple",
        "robust", "recent", "human", "neural", "latent", "sparse", "dense",
        "gold", "standard", "open", "strong", "weak", "fast", "slow", "raw",
        "fuzzy", "smart", "gray", "grey", "joint", "real", "full", "final"};
    static const char* kVerbs[] = {
        "propose", "present", "show", "use", "apply", "evaluate", "compare",
        "demonstrate", "introduce", "describe", "provide", "develop",
        "achieve", "obtain", "improve", "outperform", "train", "test",
        "predict", "explain", "interpret", "analyze", "investigate",
        "explore", "discuss", "address", "consider", "perform", "conduct",
        "report", "focus", "aim", "find", "make", "take", "give", "allow",
        "enable", "require", "include", "contain", "follow", "remain",
        "become", "suggest", "indicate", "reveal", "observe", "note"};
    static const char* kNouns[] = {
        "model", "method", "approach", "system", "network", "learning",
        "data", "analysis", "result", "performance", "accuracy", "framework",
        "algorithm", "feature", "task", "dataset", "evaluation", "process",
        "information", "knowledge", "decision", "prediction", "explanation",
        "interpretation", "classification", "detection", "research", "study",
        "paper", "work", "application", "domain", "problem", "solution",
        "user", "tree", "machine", "intelligence", "box", "score", "term"};
    for (const char* w : kAdjectives) lex.add(w, PosTag::JJ);
    for (const char* w : kVerbs) lex.add(w, PosTag::OTHER);
    for (const char* w : kNouns) lex.add(w, PosTag::NN);
    return lex;
}

void tag_pos(std::vector<Token>& tokens, const PosLexicon& lexicon,
             const std::vector<PosTag>* external_tags) {
    if (external_tags) {
        if (external_tags->size() != tokens.size())
            throw std::runtime_error(
                "external tag list length does not match token count");
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            tokens[i].pos = (*external_tags)[i];
            tokens[i].pos_set = true;
        }
        return;
    }

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        Token& t = tokens[i];
        t.pos_set = true;
        if (auto tag = lexicon.find(t.norm)) {
            t.pos = *tag;
            continue;
        }
        const std::string& n = t.norm;
        if (ends_with(n, "ous") || ends_with(n, "able") || ends_with(n, "al") ||
            ends_with(n, "ive") || ends_with(n, "ic") || ends_with(n, "ed")) {
            t.pos = PosTag::JJ;
            continue;
        }
        if (ends_with(n, "ly")) {
            t.pos = PosTag::OTHER;
            continue;
        }
        bool sentence_initial =
            i == 0 || tokens[i - 1].sentence_id != t.sentence_id;
        if (!sentence_initial && !t.surface.empty() &&
            std::isupper((unsigned char)t.surface[0])) {
            t.pos = PosTag::NNP;
            continue;
        }
        if (n.size() > 2 && n.back() == 's' && !ends_with(n, "ss")) {
            auto stem = lexicon.find(n.substr(0, n.size() - 1));
            if (stem && *stem == PosTag::NN) {
                t.pos = PosTag::NNS;
                continue;
            }
        }
        t.pos = PosTag::NN;
    }
}

std::vector<CandidatePhrase> chunk_noun_phrases(const Document& doc) {
    const auto& toks = doc.tokens;
    std::vector<CandidatePhrase> out;
    std::unordered_map<std::string, std::size_t> by_norm;

    auto eligible = [&](std::size_t i) {
        return !toks[i].is_stop &&
               (toks[i].pos == PosTag::JJ || is_noun_tag(toks[i].pos));
    };

    auto emit = [&](std::size_t start, std::size_t end) {
        std::string norm, surface;
        for (std::size_t i = start; i < end; ++i) {
            if (i > start) {
                norm += ' ';
                surface += ' ';
            }
            norm += toks[i].norm;
            surface += toks[i].surface;
        }
        bool in_title = toks[start].from_title;
        auto it = by_norm.find(norm);
        if (it != by_norm.end()) {
            CandidatePhrase& c = out[it->second];
            ++c.count_in_doc;
            c.in_title = c.in_title || in_title;
            return;
        }
        CandidatePhrase c;
        c.doc_id = doc.id;
        c.start = start;
        c.end = end;
        c.surface = surface;
        c.norm = norm;
        c.n_tokens = int(end - start);
        c.in_title = in_title;
        by_norm.emplace(norm, out.size());
        out.push_back(std::move(c));
    };

    std::size_t i = 0;
    while (i < toks.size()) {
        if (!eligible(i)) {
            ++i;
            continue;
        }
        // contiguous eligible run within one sentence
        std::size_t run_end = i;
        while (run_end < toks.size() && eligible(run_end) &&
               toks[run_end].sentence_id == toks[i].sentence_id)
            ++run_end;
        // leftmost-longest: match extends to the last noun in the run
        std::size_t last_noun = run_end;
        for (std::size_t j = run_end; j > i;) {
            --j;
            if (is_noun_tag(toks[j].pos)) {
                last_noun = j;
                break;
            }
        }
        if (last_noun == run_end) {
            i = run_end;  // all-adjective run, no match anywhere inside
            continue;
        }
        emit(i, last_noun + 1);
        i = last_noun + 1;
    }
    return out;
}

namespace {

// Schwartz-Hearst best-long-form search: match short-form characters
// right to left inside the window. Unlike the strict original, the
// first character may match anywhere inside a word (so "XAI" matches
// "eXplainable Artificial Intelligence"); the result is extended left
// to the start of the word holding that match.
std::optional<std::string> find_long_form(const std::string& short_form,
                                          const std::string& window) {
    int s = int(short_form.size()) - 1;
    int l = int(window.size()) - 1;
    while (s >= 0) {
        char c = char(std::tolower((unsigned char)short_form[s]));
        if (!std::isalnum((unsigned char)c)) {
            --s;
            continue;
        }
        while (l >= 0 && std::tolower((unsigned char)window[l]) != c)
            --l;
        if (l < 0) return std::nullopt;
        --l;
        --s;
    }
    ++l;  // index of the matched first character
    // extend left to the start of that word
    while (l > 0 && !std::isspace((unsigned char)window[l - 1])) --l;
    return window.substr(l);
}

bool valid_short_form(const std::string& s) {
    if (s.size() < 2 || s.size() > 10) return false;
    if (!std::isalnum((unsigned char)s[0])) return false;
    int words = 1;
    bool has_letter = false;
    for (char c : s) {
        if (std::isspace((unsigned char)c)) ++words;
        if (std::isalpha((unsigned char)c)) has_letter = true;
    }
    return has_letter && words <= 2;
}

std::vector<std::string> whitespace_split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

}  // namespace

std::vector<AcronymEntry> extract_acronyms(const std::string& raw_text,
                                           const std::string& doc_id) {
    std::vector<AcronymEntry> out;
    std::size_t pos = 0;
    while ((pos = raw_text.find('(', pos)) != std::string::npos) {
        std::size_t close = raw_text.find(')', pos + 1);
        if (close == std::string::npos) break;
        std::string short_form = raw_text.substr(pos + 1, close - pos - 1);
        std::size_t paren = pos;
        pos = close + 1;
        if (!valid_short_form(short_form)) continue;

        // window: up to min(|short|+5, 2*|short|) words before the paren
        std::string before = raw_text.substr(0, paren);
        auto words = whitespace_split(before);
        std::size_t limit =
            std::min(short_form.size() + 5, 2 * short_form.size());
        if (words.size() > limit)
            words.erase(words.begin(), words.end() - long(limit));
        std::string window;
        for (const auto& w : words) {
            if (!window.empty()) window += ' ';
            window += w;
        }

        auto lf = find_long_form(short_form, window);
        if (!lf) continue;
        std::string long_form = lower(*lf);
        // strip trailing punctuation
        while (!long_form.empty() &&
               std::ispunct((unsigned char)long_form.back()))
            long_form.pop_back();
        auto lf_words = whitespace_split(long_form);
        if (lf_words.size() < 2) continue;
        if (long_form.find(lower(short_form)) != std::string::npos) continue;

        AcronymEntry e;
        e.short_form = short_form;
        e.long_form = long_form;
        e.doc_id = doc_id;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CandidatePhrase> collect_candidates(
    const Document& doc, const std::vector<AcronymEntry>& acronyms) {
    std::vector<CandidatePhrase> out = chunk_noun_phrases(doc);
    std::unordered_map<std::string, std::size_t> by_norm;
    for (std::size_t i = 0; i < out.size(); ++i) by_norm[out[i].norm] = i;

    for (const AcronymEntry& a : acronyms) {
        if (a.doc_id != doc.id) continue;
        std::string norm = lower(a.short_form);
        auto it = by_norm.find(norm);
        if (it != by_norm.end()) {
            out[it->second].is_acronym = true;
            continue;
        }
        // short form used only outside chunks; count standalone tokens
        int count = 0;
        std::size_t first = 0;
        bool in_title = false;
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (doc.tokens[i].norm == norm) {
                if (count == 0) first = i;
                in_title = in_title || doc.tokens[i].from_title;
                ++count;
            }
        }
        if (count == 0) continue;
        CandidatePhrase c;
        c.doc_id = doc.id;
        c.start = first;
        c.end = first + 1;
        c.surface = doc.tokens[first].surface;
        c.norm = norm;
        c.n_tokens = 1;
        c.in_title = in_title;
        c.count_in_doc = count;
        c.is_acronym = true;
        by_norm[norm] = out.size();
        out.push_back(std::move(c));
    }

    // mark any unigram chunk that matches a short form case-insensitively
    for (CandidatePhrase& c : out) {
        if (c.n_tokens != 1 || c.is_acronym) continue;
        for (const AcronymEntry& a : acronyms) {
            if (a.doc_id == doc.id && lower(a.short_form) == c.norm) {
                c.is_acronym = true;
                break;
            }
        }
    }

    // drop empties and all-stopword candidates (chunks never contain
    // stopwords, acronym tokens might be oddly flagged)
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const CandidatePhrase& c) {
                                 if (c.norm.empty()) return true;
                                 for (std::size_t i = c.start; i < c.end; ++i)
                                     if (!doc.tokens[i].is_stop) return false;
                                 return true;
                             }),
              out.end());
    return out;
}

}  // namespace kex
