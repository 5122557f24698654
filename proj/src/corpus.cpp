#include "kex/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace kex {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_dash(char c) {
    return c == '-';
}

// en/em dashes arrive as multi-byte UTF-8; replace them too.
std::string replace_dashes(const std::string& text) {
    std::string out = text;
    for (char& c : out)
        if (is_dash(c)) c = ' ';
    static const char* multi[] = {"\xe2\x80\x93", "\xe2\x80\x94"};  // – —
    for (const char* d : multi) {
        std::size_t pos = 0;
        while ((pos = out.find(d, pos)) != std::string::npos)
            out.replace(pos, 3, " \xc2\xa0");  // keep byte length stable
    }
    return out;
}

bool is_strip_punct(unsigned char c) {
    return std::ispunct(c) || c == '\xa0' || c == '\xc2';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<std::string> split_terms(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) {
        while (!cur.empty() && std::isspace((unsigned char)cur.front()))
            cur.erase(cur.begin());
        while (!cur.empty() && std::isspace((unsigned char)cur.back()))
            cur.pop_back();
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

}  // namespace

std::string Document::raw_text() const {
    if (title.empty()) return abstract;
    if (abstract.empty()) return title;
    return title + ". " + abstract;
}

CorpusLoadResult load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open corpus file: " + path);

    CorpusLoadResult result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    int line_no = 0;

    auto add_record = [&](Document&& doc, int record_no) {
        if (doc.id.empty())
            throw std::runtime_error("record " + std::to_string(record_no) +
                                     ": empty id");
        if (!seen_ids.insert(doc.id).second)
            throw std::runtime_error("record " + std::to_string(record_no) +
                                     ": duplicate id '" + doc.id + "'");
        if (doc.title.empty() && doc.abstract.empty()) {
            ++result.rejected_records;
            return;
        }
        result.documents.push_back(std::move(doc));
    };

    if (format == CorpusFormat::jsonl) {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json rec;
            try {
                rec = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": invalid JSON: " + e.what());
            }
            for (const char* field : {"id", "title", "abstract"}) {
                if (!rec.contains(field))
                    throw std::runtime_error("line " + std::to_string(line_no) +
                                             ": missing field '" + field + "'");
            }
            Document doc;
            doc.id = rec["id"].is_string() ? rec["id"].get<std::string>()
                                           : rec["id"].dump();
            doc.title = rec["title"].get<std::string>();
            doc.abstract = rec["abstract"].get<std::string>();
            if (rec.contains("keywords"))
                for (const auto& k : rec["keywords"])
                    doc.gold_terms.push_back(k.get<std::string>());
            if (rec.contains("tags"))
                for (const auto& t : rec["tags"])
                    doc.pre_tags.push_back(t.get<std::string>());
            add_record(std::move(doc), line_no);
        }
    } else {
        if (!std::getline(in, line))
            throw std::runtime_error("empty CSV file: " + path);
        ++line_no;
        auto header = split_csv_line(line);
        auto col = [&](const std::string& name) {
            auto it = std::find(header.begin(), header.end(), name);
            return it == header.end() ? -1 : int(it - header.begin());
        };
        int id_c = col("id"), title_c = col("title"), abs_c = col("abstract");
        int kw_c = col("keywords");
        if (id_c < 0 || title_c < 0 || abs_c < 0)
            throw std::runtime_error(
                "CSV header must contain id,title,abstract columns");
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            auto fields = split_csv_line(line);
            int needed = std::max({id_c, title_c, abs_c, kw_c});
            if ((int)fields.size() <= needed)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": too few CSV fields");
            Document doc;
            doc.id = fields[id_c];
            doc.title = fields[title_c];
            doc.abstract = fields[abs_c];
            if (kw_c >= 0)
                doc.gold_terms = split_terms(fields[kw_c], ';');
            add_record(std::move(doc), line_no);
        }
    }
    return result;
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open stopword file: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string w;
        while (ss >> w) set.words.insert(lower(w));
    }
    return set;
}

StopwordSet builtin_stopwords() {
    static const char* kWords[] = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an",
        "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
        "before", "being", "below", "between", "both", "but", "by", "can",
        "can't", "cannot", "could", "couldn't", "did", "didn't", "do", "does",
        "doesn't", "doing", "don't", "down", "during", "each", "few", "for",
        "from", "further", "had", "hadn't", "has", "hasn't", "have", "haven't",
        "having", "he", "her", "here", "hers", "herself", "him", "himself",
        "his", "how", "i", "if", "in", "into", "is", "isn't", "it", "its",
        "itself", "just", "me", "more", "most", "must", "my", "myself", "no",
        "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other",
        "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
        "shall", "she", "should", "shouldn't", "so", "some", "such", "than",
        "that", "the", "their", "theirs", "them", "themselves", "then",
        "there", "these", "they", "this", "those", "through", "to", "too",
        "under", "until", "up", "very", "was", "wasn't", "we", "were",
        "weren't", "what", "when", "where", "which", "while", "who", "whom",
        "why", "will", "with", "won't", "would", "wouldn't", "you", "your",
        "yours", "yourself", "yourselves"};
    StopwordSet set;
    for (const char* w : kWords) set.words.insert(w);
    return set;
}

void tokenize(Document& doc) {
    doc.tokens.clear();
    const std::string raw = doc.raw_text();
    const std::string text = replace_dashes(raw);
    const std::size_t title_len = doc.title.size();

    int sentence_id = 0;
    bool pending_break = false;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !std::isspace((unsigned char)text[i])) ++i;
        std::size_t end = i;

        bool ends_sentence = false;
        char last = text[end - 1];
        if (last == '.' || last == '!' || last == '?') ends_sentence = true;

        // strip leading/trailing punctuation, keep internal characters
        std::size_t s = start, e = end;
        while (s < e && is_strip_punct((unsigned char)text[s])) ++s;
        while (e > s && is_strip_punct((unsigned char)text[e - 1])) --e;
        if (s >= e) {
            pending_break = pending_break || ends_sentence;
            continue;
        }

        if (pending_break) {
            ++sentence_id;
            pending_break = false;
        }

        Token tok;
        tok.surface = text.substr(s, e - s);
        tok.norm = lower(tok.surface);
        tok.char_offset = s;
        tok.from_title = !doc.title.empty() && s < title_len;
        tok.sentence_id = sentence_id;
        doc.tokens.push_back(std::move(tok));
        pending_break = ends_sentence;
    }
}

void flag_stopwords(std::vector<Token>& tokens, const StopwordSet& stop) {
    for (Token& t : tokens) t.is_stop = stop.contains(t.norm);
}

}  // namespace kex
