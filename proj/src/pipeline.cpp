#include "kex/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "kex/candidates.hpp"
#include "kex/clustering.hpp"
#include "kex/corpus.hpp"
#include "kex/embeddings.hpp"
#include "kex/evaluation.hpp"
#include "kex/postprocess.hpp"
#include "kex/scoring.hpp"

namespace kex {

namespace {

constexpr const char* kVersion = "kex 0.1.0";

using ojson = nlohmann::ordered_json;

std::string fnv1a(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Manifest {
    std::string version = kVersion;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> inputs;  // name, hash

    ojson to_json() const {
        ojson j;
        j["version"] = version;
        j["config_hash"] = config_hash;
        ojson in = ojson::object();
        for (const auto& [name, hash] : inputs) in[name] = hash;
        j["inputs"] = in;
        return j;
    }

    std::string csv_header() const {
        std::string s = "# manifest version=" + version +
                        " config_hash=" + config_hash;
        for (const auto& [name, hash] : inputs) s += " " + name + "=" + hash;
        s += "\n";
        return s;
    }
};

Manifest make_manifest(const Config& config) {
    Manifest m;
    m.config_hash = config_fingerprint(config);
    auto add = [&](const std::string& name, const std::string& path) {
        if (!path.empty()) m.inputs.emplace_back(name, hash_file(path));
    };
    add("corpus", config.corpus_path);
    add("embeddings", config.embedding_path);
    add("glossary", config.glossary_path);
    add("stopwords", config.stopword_path);
    add("frequencies", config.frequency_path);
    add("lexicon", config.lexicon_path);
    return m;
}

CorpusFormat resolve_format(const Config& config) {
    if (config.corpus_format == "jsonl") return CorpusFormat::jsonl;
    if (config.corpus_format == "csv") return CorpusFormat::csv;
    if (config.corpus_format == "auto") {
        if (config.corpus_path.size() >= 4 &&
            config.corpus_path.substr(config.corpus_path.size() - 4) == ".csv")
            return CorpusFormat::csv;
        return CorpusFormat::jsonl;
    }
    throw ConfigError("unknown corpus format: " + config.corpus_format);
}

void require_file(const std::string& path, const std::string& what) {
    if (path.empty())
        throw ConfigError("missing required " + what + " path");
    if (!std::filesystem::exists(path))
        throw ConfigError(what + " file does not exist: " + path);
}

std::ofstream open_out(const Config& config, const std::string& name) {
    std::filesystem::create_directories(config.out_dir);
    std::string path = (std::filesystem::path(config.out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write output file: " + path);
    return out;
}

// simple deterministic parallel-for over document indices
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct PreparedCorpus {
    std::vector<Document> docs;
    std::vector<std::vector<AcronymEntry>> acronyms;  // per document
    std::vector<std::vector<CandidatePhrase>> candidates;
    int rejected_records = 0;
};

PreparedCorpus prepare_corpus(const Config& config, bool need_candidates) {
    require_file(config.corpus_path, "corpus");
    auto loaded = load_corpus(config.corpus_path, resolve_format(config));
    if (loaded.documents.empty())
        throw std::runtime_error("corpus contains no usable documents");

    StopwordSet stop = config.stopword_path.empty()
                           ? builtin_stopwords()
                           : load_stopwords(config.stopword_path);
    PosLexicon lexicon = PosLexicon::builtin();
    if (!config.lexicon_path.empty()) {
        PosLexicon extra = PosLexicon::load(config.lexicon_path);
        lexicon = std::move(extra);
    }

    PreparedCorpus prepared;
    prepared.docs = std::move(loaded.documents);
    prepared.rejected_records = loaded.rejected_records;
    prepared.acronyms.resize(prepared.docs.size());
    prepared.candidates.resize(prepared.docs.size());

    parallel_for(prepared.docs.size(), config.threads, [&](std::size_t i) {
        Document& doc = prepared.docs[i];
        // acronyms first: case and dashes still intact in the raw text
        prepared.acronyms[i] = extract_acronyms(doc.raw_text(), doc.id);
        tokenize(doc);
        flag_stopwords(doc.tokens, stop);
        if (need_candidates) {
            if (!doc.pre_tags.empty() &&
                doc.pre_tags.size() == doc.tokens.size()) {
                std::vector<PosTag> tags;
                tags.reserve(doc.pre_tags.size());
                for (const auto& t : doc.pre_tags)
                    tags.push_back(parse_pos_tag(t));
                tag_pos(doc.tokens, lexicon, &tags);
            } else {
                tag_pos(doc.tokens, lexicon);
            }
            prepared.candidates[i] =
                collect_candidates(doc, prepared.acronyms[i]);
        }
    });
    return prepared;
}

void write_ranked_csv(std::ofstream& out, const Manifest& manifest,
                      const std::vector<RankedList>& lists) {
    out << manifest.csv_header();
    out << "doc_id,phrase,doc_rel,domain_rel,pmi_min,entropy,length_penalty,"
           "quality,combined,rank\n";
    for (const RankedList& list : lists) {
        for (std::size_t i = 0; i < list.entries.size(); ++i) {
            const RankedEntry& e = list.entries[i];
            out << list.doc_id << ',' << e.cand.norm << ','
                << fmt(e.score.doc_rel) << ',' << fmt(e.score.domain_rel)
                << ',';
            if (e.cand.n_tokens >= 2 && e.score.pmi_defined)
                out << fmt(e.score.pmi_min);
            out << ',' << fmt(e.score.entropy) << ','
                << fmt(e.score.length_penalty) << ',' << fmt(e.score.quality)
                << ',' << fmt(e.score.combined) << ',' << (i + 1) << '\n';
        }
    }
}

std::optional<Vector> embed_term_checked(const std::string& term,
                                         const EmbeddingTable& table) {
    return embed_phrase(term, table);
}

}  // namespace

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::uint64_t h = 1469598103934665603ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const auto* p = reinterpret_cast<const unsigned char*>(buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
        if (in.gcount() < std::streamsize(sizeof buf)) break;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", (unsigned long long)h);
    return out;
}

std::string config_fingerprint(const Config& c) {
    std::ostringstream ss;
    ss << c.corpus_path << '|' << c.corpus_format << '|' << c.embedding_path
       << '|' << c.strip_prefix << '|' << c.glossary_path << '|'
       << c.stopword_path << '|' << c.frequency_path << '|' << c.lexicon_path
       << '|' << fmt(c.w_domain) << '|' << fmt(c.w_quality) << '|'
       << fmt(c.title_boost) << '|' << fmt(c.top_fraction) << '|'
       << fmt(c.sif_a) << '|' << fmt(c.pmi_threshold) << '|' << c.cutoff_rank
       << '|' << fmt(c.tfidf_drop) << '|' << c.cluster_algorithm << '|' << c.k
       << '|' << c.k_min << '|' << c.k_max << '|' << c.seed << '|'
       << c.max_iter << '|' << fmt(c.tol) << '|' << c.scan;
    for (int k : c.eval_ks) ss << '|' << k;
    std::string s = ss.str();
    return fnv1a(s.data(), s.size(), 1469598103934665603ULL);
}

int run_extract(const Config& config) {
    try {
        require_file(config.embedding_path, "embedding");
        PreparedCorpus prepared = prepare_corpus(config, true);

        EmbeddingTable table =
            EmbeddingTable::load(config.embedding_path, config.strip_prefix);
        SifWeights sif =
            config.frequency_path.empty()
                ? SifWeights::from_corpus(prepared.docs, config.sif_a)
                : SifWeights::from_frequency_file(config.frequency_path,
                                                  config.sif_a);
        std::optional<Glossary> glossary;
        if (!config.glossary_path.empty()) {
            require_file(config.glossary_path, "glossary");
            glossary = Glossary::load(config.glossary_path, table);
            if (glossary->empty())
                throw ConfigError("glossary has no embeddable terms: " +
                                  config.glossary_path);
        }

        ScoringParams params;
        params.w_domain = config.w_domain;
        params.w_quality = config.w_quality;
        params.title_boost = config.title_boost;
        params.top_fraction = config.top_fraction;
        params.pmi_threshold = config.pmi_threshold;

        CorpusScorer scorer(prepared.docs, prepared.candidates, table, sif,
                            glossary ? &*glossary : nullptr, params);
        if (2 * scorer.unembeddable_documents() >
            int(prepared.docs.size())) {
            std::cerr << "error: " << scorer.unembeddable_documents() << " of "
                      << prepared.docs.size()
                      << " documents have no in-vocabulary tokens\n";
            return kExitPipelineFailure;
        }

        std::vector<RankedList> lists(prepared.docs.size());
        parallel_for(prepared.docs.size(), config.threads,
                     [&](std::size_t i) {
                         lists[i] = lemma_dedup(scorer.rank_document(i));
                     });

        std::vector<GlobalKeyphrase> global =
            aggregate_ranks(lists, config.cutoff_rank);
        std::vector<AcronymEntry> all_acronyms;
        for (const auto& a : prepared.acronyms)
            all_acronyms.insert(all_acronyms.end(), a.begin(), a.end());
        int conflicts = expand_acronyms(global, all_acronyms);
        if (conflicts > 0)
            std::cerr << "warning: " << conflicts
                      << " acronym(s) with conflicting definitions\n";
        global = tfidf_filter(std::move(global), prepared.docs,
                              config.tfidf_drop);

        Manifest manifest = make_manifest(config);
        {
            auto out = open_out(config, "ranked.csv");
            write_ranked_csv(out, manifest, lists);
        }
        {
            ojson j;
            j["manifest"] = manifest.to_json();
            j["n_documents"] = prepared.docs.size();
            j["rejected_records"] = prepared.rejected_records;
            ojson arr = ojson::array();
            for (const GlobalKeyphrase& g : global) {
                ojson e;
                e["canonical"] = g.canonical;
                e["avg_rank"] = g.avg_rank;
                e["n_docs"] = g.doc_ids.size();
                e["doc_ids"] = g.doc_ids;
                e["best_combined"] = g.best_combined;
                e["tfidf"] = g.tfidf;
                arr.push_back(std::move(e));
            }
            j["keyphrases"] = std::move(arr);
            auto out = open_out(config, "keyphrases.json");
            out << j.dump(2) << '\n';
        }
        std::cout << "extracted " << global.size() << " key-phrases from "
                  << prepared.docs.size() << " documents -> "
                  << config.out_dir << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPipelineFailure;
    }
}

int run_cluster(const Config& config, const std::string& keyphrase_file) {
    try {
        require_file(keyphrase_file, "keyphrase");
        require_file(config.embedding_path, "embedding");

        ojson doc;
        {
            std::ifstream in(keyphrase_file);
            try {
                doc = ojson::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("invalid keyphrase file: ") +
                                  e.what());
            }
        }
        std::vector<std::string> terms;
        for (const auto& e : doc.at("keyphrases"))
            terms.push_back(e.at("canonical").get<std::string>());

        EmbeddingTable table =
            EmbeddingTable::load(config.embedding_path, config.strip_prefix);
        std::vector<std::string> kept;
        std::vector<Vector> vectors;
        int skipped = 0;
        for (const std::string& t : terms) {
            auto v = embed_term_checked(t, table);
            if (!v) {
                ++skipped;
                continue;
            }
            kept.push_back(t);
            vectors.push_back(std::move(*v));
        }
        if (skipped > 0)
            std::cerr << "warning: " << skipped
                      << " term(s) without embeddings skipped\n";
        const int n = int(vectors.size());
        if (n < 2)
            throw ConfigError("fewer than two embeddable terms to cluster");

        ClusterAlgorithm algo;
        if (config.cluster_algorithm == "spherical_kmeans")
            algo = ClusterAlgorithm::spherical_kmeans;
        else if (config.cluster_algorithm == "hac")
            algo = ClusterAlgorithm::hac;
        else
            throw ConfigError("unknown clustering algorithm: " +
                              config.cluster_algorithm);

        Manifest manifest = make_manifest(config);
        manifest.inputs.emplace_back("keyphrases", hash_file(keyphrase_file));

        int k = config.k;
        KScanResult scan_result;
        if (config.scan) {
            scan_result = scan_k(vectors, config.k_min, config.k_max, algo,
                                 config.seed, config.max_iter, config.tol);
            if (scan_result.clamped)
                std::cerr << "warning: k_max clamped to " << n << "\n";
            k = scan_result.best_k;
            auto out = open_out(config, "silhouette_scan.csv");
            out << manifest.csv_header() << "k,silhouette\n";
            for (const auto& e : scan_result.entries)
                out << e.k << ',' << fmt(e.silhouette) << '\n';
        }
        if (k < 2 || k > n)
            throw ConfigError("k=" + std::to_string(k) +
                              " out of range for " + std::to_string(n) +
                              " terms");

        ClusteringResult result;
        Dendrogram dendro;
        if (algo == ClusterAlgorithm::spherical_kmeans) {
            result = spherical_kmeans(vectors, k, config.seed, config.max_iter,
                                      config.tol);
        } else {
            dendro = hac_average_cosine(vectors);
            result.algorithm = ClusterAlgorithm::hac;
            result.k = k;
            result.labels = cut_dendrogram(dendro, k);
            result.silhouette = silhouette_cosine(vectors, result.labels);
            auto out = open_out(config, "dendrogram.csv");
            out << manifest.csv_header() << "cluster_a,cluster_b,distance,size\n";
            for (const Merge& m : dendro.merges)
                out << m.a << ',' << m.b << ',' << fmt(m.distance) << ','
                    << m.size << '\n';
        }

        // per-cluster centers for member ordering (k-means centroids, or
        // normalized member means for HAC)
        std::vector<Vector> centers;
        if (!result.centroids.empty()) {
            centers = result.centroids;
        } else {
            centers.assign(k, Vector(table.dim(), 0.0));
            std::vector<Vector> unit = vectors;
            for (auto& v : unit) normalize(v);
            for (int i = 0; i < n; ++i)
                for (std::size_t d = 0; d < table.dim(); ++d)
                    centers[result.labels[i]][d] += unit[i][d];
            for (auto& c : centers)
                if (norm(c) > 0) normalize(c);
        }

        ojson j;
        j["manifest"] = manifest.to_json();
        j["algorithm"] = config.cluster_algorithm;
        j["k"] = k;
        j["n_terms"] = n;
        j["silhouette"] = result.silhouette;
        if (algo == ClusterAlgorithm::spherical_kmeans)
            j["objective"] = result.objective;
        if (config.scan) j["scanned_best_k"] = scan_result.best_k;
        ojson clusters = ojson::array();
        for (int c = 0; c < k; ++c) {
            std::vector<std::pair<double, std::string>> members;
            for (int i = 0; i < n; ++i) {
                if (result.labels[i] != c) continue;
                Vector u = vectors[i];
                normalize(u);
                members.emplace_back(1.0 - dot(u, centers[c]), kept[i]);
            }
            std::sort(members.begin(), members.end());
            ojson cl;
            cl["id"] = c;
            ojson ms = ojson::array();
            for (const auto& [dist, term] : members) {
                ojson m;
                m["term"] = term;
                m["distance_to_center"] = dist;
                ms.push_back(std::move(m));
            }
            cl["members"] = std::move(ms);
            clusters.push_back(std::move(cl));
        }
        j["clusters"] = std::move(clusters);
        auto out = open_out(config, "clusters.json");
        out << j.dump(2) << '\n';
        std::cout << "clustered " << n << " terms into " << k
                  << " clusters (silhouette " << fmt(result.silhouette)
                  << ") -> " << config.out_dir << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPipelineFailure;
    }
}

int run_evaluate(const Config& config, const std::string& ranked_csv) {
    try {
        require_file(ranked_csv, "ranked prediction");
        PreparedCorpus prepared = prepare_corpus(config, false);

        bool any_gold = false;
        for (const Document& d : prepared.docs)
            if (!d.gold_terms.empty()) any_gold = true;
        if (!any_gold)
            throw ConfigError("corpus has no gold terms to evaluate against");

        // doc_id -> ranked phrases, in file order
        std::map<std::string, std::vector<std::string>> predictions;
        {
            std::ifstream in(ranked_csv);
            std::string line;
            bool header_seen = false;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                if (!header_seen) {
                    header_seen = true;  // column header
                    continue;
                }
                auto c1 = line.find(',');
                if (c1 == std::string::npos) continue;
                auto c2 = line.find(',', c1 + 1);
                std::string doc_id = line.substr(0, c1);
                std::string phrase = line.substr(c1 + 1, c2 - c1 - 1);
                predictions[doc_id].push_back(phrase);
            }
        }

        std::vector<std::pair<std::vector<std::string>,
                              std::vector<std::string>>> pred_gold;
        for (const Document& d : prepared.docs) {
            auto it = predictions.find(d.id);
            pred_gold.emplace_back(
                it == predictions.end() ? std::vector<std::string>{}
                                        : it->second,
                d.gold_terms);
        }
        EvalReport report = evaluate(pred_gold, config.eval_ks);

        Manifest manifest = make_manifest(config);
        manifest.inputs.emplace_back("predictions", hash_file(ranked_csv));

        std::cout << "macro-averaged over " << report.n_docs
                  << " documents with gold terms\n";
        std::printf("%-6s %10s %10s %10s\n", "k", "P", "R", "F1");
        for (const auto& [k, p] : report.per_k)
            std::printf("Top%-3d %10.4f %10.4f %10.4f\n", k, p.precision,
                        p.recall, p.f1);
        if (report.short_prediction_docs > 0)
            std::cout << "note: " << report.short_prediction_docs
                      << " document(s) had fewer predictions than the largest "
                         "k (precision denominator min(k, |predicted|))\n";

        ojson j;
        j["manifest"] = manifest.to_json();
        j["averaging"] = "macro";
        j["n_docs"] = report.n_docs;
        ojson per_k = ojson::array();
        for (const auto& [k, p] : report.per_k) {
            ojson e;
            e["k"] = k;
            e["precision"] = p.precision;
            e["recall"] = p.recall;
            e["f1"] = p.f1;
            per_k.push_back(std::move(e));
        }
        j["per_k"] = std::move(per_k);
        {
            auto out = open_out(config, "evaluation.json");
            out << j.dump(2) << '\n';
        }
        {
            auto out = open_out(config, "evaluation.csv");
            out << manifest.csv_header() << "method,k,P,R,F1\n";
            for (const auto& [k, p] : report.per_k)
                out << "combined," << k << ',' << fmt(p.precision) << ','
                    << fmt(p.recall) << ',' << fmt(p.f1) << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPipelineFailure;
    }
}

int run_stats(const Config& config) {
    try {
        PreparedCorpus prepared = prepare_corpus(config, false);
        CorpusStats stats = corpus_stats(prepared.docs);
        std::printf("documents:            %zu\n", prepared.docs.size());
        std::printf("total gold terms:     %ld\n", stats.total_terms);
        std::printf("in text:              %.2f%%\n", stats.pct_in_text);
        std::printf("avg tokens per term:  %.4f\n", stats.avg_tokens_per_term);
        std::printf("avg terms per paper:  %.4f\n", stats.avg_terms_per_paper);
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPipelineFailure;
    }
}

}  // namespace kex
