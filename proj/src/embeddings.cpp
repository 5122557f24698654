#include "kex/embeddings.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kex {

double dot(const Vector& u, const Vector& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("vector dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

double norm(const Vector& v) {
    return std::sqrt(dot(v, v));
}

double cosine(const Vector& u, const Vector& v) {
    double nu = norm(u), nv = norm(v);
    if (nu == 0.0 || nv == 0.0)
        throw std::invalid_argument("cosine of zero vector");
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

void normalize(Vector& v) {
    double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    for (double& x : v) x /= n;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// gzFile reads plain files too; collect whole lines regardless of length.
class GzLineReader {
public:
    explicit GzLineReader(const std::string& path)
        : file_(gzopen(path.c_str(), "rb")) {
        if (!file_)
            throw std::runtime_error("cannot open embedding file: " + path);
    }
    ~GzLineReader() {
        if (file_) gzclose(file_);
    }
    GzLineReader(const GzLineReader&) = delete;
    GzLineReader& operator=(const GzLineReader&) = delete;

    bool next(std::string& line) {
        line.clear();
        char buf[1 << 16];
        while (true) {
            if (!gzgets(file_, buf, sizeof buf)) return !line.empty();
            line += buf;
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
                if (!line.empty() && line.back() == '\r') line.pop_back();
                return true;
            }
        }
    }

private:
    gzFile file_;
};

}  // namespace

void EmbeddingTable::insert(const std::string& key, Vector v) {
    if (dim_ == 0) dim_ = v.size();
    if (v.size() != dim_)
        throw std::invalid_argument("embedding dimension mismatch on insert");
    entries_.emplace(lower(key), std::move(v));
}

EmbeddingTable EmbeddingTable::load(const std::string& path,
                                    const std::string& strip_prefix) {
    GzLineReader reader(path);
    std::string line;
    if (!reader.next(line))
        throw std::runtime_error("empty embedding file: " + path);

    EmbeddingTable table;
    long line_no = 1;
    std::size_t expected_count = 0;
    {
        std::istringstream hs(line);
        long count = 0, dim = 0;
        if (!(hs >> count >> dim) || count <= 0 || dim <= 0)
            throw std::runtime_error(
                "embedding file line 1: invalid header (expected 'count dim')");
        expected_count = std::size_t(count);
        table.dim_ = std::size_t(dim);
    }
    table.entries_.reserve(expected_count);

    while (reader.next(line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error("embedding file line " +
                                     std::to_string(line_no) +
                                     ": no vector values");
        std::string key = line.substr(0, sp);
        if (!strip_prefix.empty() && key.rfind(strip_prefix, 0) == 0)
            key = key.substr(strip_prefix.size());
        key = lower(key);

        Vector vec;
        vec.reserve(table.dim_);
        const char* p = line.c_str() + sp;
        char* end = nullptr;
        while (*p) {
            while (*p == ' ' || *p == '\t') ++p;
            if (!*p) break;
            double v = std::strtod(p, &end);
            if (end == p)
                throw std::runtime_error("embedding file line " +
                                         std::to_string(line_no) +
                                         ": invalid number");
            vec.push_back(v);
            p = end;
        }
        if (vec.size() != table.dim_)
            throw std::runtime_error(
                "embedding file line " + std::to_string(line_no) + ": expected " +
                std::to_string(table.dim_) + " values, got " +
                std::to_string(vec.size()));
        if (!table.entries_.emplace(std::move(key), std::move(vec)).second)
            ++table.duplicate_warnings_;
    }
    if (table.entries_.empty())
        throw std::runtime_error("embedding file has no entries: " + path);
    return table;
}

SifWeights SifWeights::from_corpus(const std::vector<Document>& docs,
                                   double a) {
    SifWeights w;
    w.a = a;
    long total = 0;
    for (const Document& d : docs)
        for (const Token& t : d.tokens) {
            ++w.term_prob[t.norm];
            ++total;
        }
    if (total > 0)
        for (auto& [k, v] : w.term_prob) v /= double(total);
    return w;
}

SifWeights SifWeights::from_frequency_file(const std::string& path, double a) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open frequency file: " + path);
    SifWeights w;
    w.a = a;
    std::string line;
    long total = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("frequency file: expected token<TAB>count");
        long count = std::stol(line.substr(tab + 1));
        w.term_prob[lower(line.substr(0, tab))] += double(count);
        total += count;
    }
    if (total > 0)
        for (auto& [k, v] : w.term_prob) v /= double(total);
    return w;
}

std::optional<Vector> embed_phrase(const std::string& phrase_norm,
                                   const EmbeddingTable& table) {
    std::vector<std::string> toks;
    {
        std::istringstream ss(phrase_norm);
        std::string t;
        while (ss >> t) toks.push_back(t);
    }
    if (toks.empty()) return std::nullopt;

    Vector sum(table.dim(), 0.0);
    int segments = 0;
    std::size_t i = 0;
    while (i < toks.size()) {
        const Vector* hit = nullptr;
        std::size_t len = 0;
        for (std::size_t j = toks.size(); j > i; --j) {
            std::string key = toks[i];
            for (std::size_t k = i + 1; k < j; ++k) key += "_" + toks[k];
            if (const Vector* v = table.find(key)) {
                hit = v;
                len = j - i;
                break;
            }
        }
        if (!hit) {
            ++i;  // unmatched token, skip
            continue;
        }
        for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += (*hit)[d];
        ++segments;
        i += len;
    }
    if (segments == 0) return std::nullopt;
    for (double& x : sum) x /= double(segments);
    return sum;
}

std::optional<Vector> embed_document_sif(const std::vector<Token>& tokens,
                                         const EmbeddingTable& table,
                                         const SifWeights& sif) {
    Vector sum(table.dim(), 0.0);
    double weight_sum = 0.0;
    for (const Token& t : tokens) {
        if (t.is_stop) continue;
        const Vector* v = table.find(t.norm);
        if (!v) continue;
        double w = sif.weight(t.norm);
        for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += w * (*v)[d];
        weight_sum += w;
    }
    if (weight_sum == 0.0) return std::nullopt;
    for (double& x : sum) x /= weight_sum;
    return sum;
}

}  // namespace kex
