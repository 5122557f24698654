#ifndef KEX_PIPELINE_HPP
#define KEX_PIPELINE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kex {

// Exit codes shared by the CLI and the pipeline entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPipelineFailure = 1;
inline constexpr int kExitBadInput = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string corpus_path;
    std::string corpus_format = "auto";  // jsonl | csv | auto (by extension)
    std::string embedding_path;
    std::string strip_prefix;
    std::string glossary_path;
    std::string stopword_path;
    std::string frequency_path;  // token<TAB>count, overrides corpus probs
    std::string lexicon_path;    // word<TAB>tag, extends the built-in tagger

    double w_domain = 0.1;
    double w_quality = 0.1;
    double title_boost = 0.1;
    double top_fraction = 0.5;
    double sif_a = 1e-3;
    double pmi_threshold = 2.0;
    int cutoff_rank = 15;
    double tfidf_drop = 0.2;

    std::string cluster_algorithm = "spherical_kmeans";  // | hac
    int k = 10;
    int k_min = 5;
    int k_max = 100;
    std::uint64_t seed = 42;
    int max_iter = 300;
    double tol = 1e-6;
    bool scan = false;

    std::vector<int> eval_ks = {5, 10, 15};
    std::string out_dir = "out";
    int threads = 1;
};

// extract: ranked.csv + keyphrases.json under config.out_dir
int run_extract(const Config& config);
// cluster: clusters.json (+ silhouette_scan.csv / dendrogram.csv)
int run_cluster(const Config& config, const std::string& keyphrase_file);
// evaluate: Top-k P/R/F1 table to stdout + evaluation.json/.csv
int run_evaluate(const Config& config, const std::string& ranked_csv);
// stats: corpus-level gold-term statistics
int run_stats(const Config& config);

// FNV-1a over file bytes, hex string; used in output manifests.
std::string hash_file(const std::string& path);
std::string config_fingerprint(const Config& config);

}  // namespace kex

#endif
