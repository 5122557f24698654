// Command-line front end: extract / cluster / evaluate / stats.

#include <string>

#include "CLI11.hpp"

#include "kex/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"key-phrase extraction and semantic term clustering for "
                 "systematic mapping studies"};
    app.require_subcommand(1);

    kex::Config config;
    std::string keyphrase_file = "out/keyphrases.json";
    std::string ranked_csv = "out/ranked.csv";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", config.corpus_path, "corpus file");
        cmd->add_option("--format", config.corpus_format,
                        "corpus format: jsonl|csv|auto");
        cmd->add_option("--embeddings", config.embedding_path,
                        "word2vec text embedding file (.gz supported)");
        cmd->add_option("--strip-prefix", config.strip_prefix,
                        "URI prefix to strip from embedding keys, e.g. /c/en/");
        cmd->add_option("--stopwords", config.stopword_path,
                        "stopword file (one word per line)");
        cmd->add_option("--out-dir", config.out_dir, "output directory");
        cmd->add_option("--threads", config.threads, "worker thread cap");
        cmd->set_config("--config", "", "flat key=value config file");
    };

    CLI::App* extract = app.add_subcommand(
        "extract", "rank candidate key-phrases per document and write the "
                   "corpus-level key-phrase set");
    add_common(extract);
    extract->add_option("--glossary", config.glossary_path,
                        "domain glossary (one lowercase term per line)");
    extract->add_option("--frequencies", config.frequency_path,
                        "token<TAB>count frequency file for SIF weights");
    extract->add_option("--lexicon", config.lexicon_path,
                        "word<TAB>tag POS lexicon replacing the built-in one");
    extract->add_option("--w-domain", config.w_domain,
                        "domain relevance weight");
    extract->add_option("--w-quality", config.w_quality,
                        "phrase quality weight");
    extract->add_option("--title-boost", config.title_boost,
                        "per-token multiplicative boost for title phrases");
    extract->add_option("--top-fraction", config.top_fraction,
                        "glossary top-similarity fraction");
    extract->add_option("--sif-a", config.sif_a, "SIF smoothing parameter");
    extract->add_option("--pmi-threshold", config.pmi_threshold,
                        "minimum PMI for multiword quality");
    extract->add_option("--cutoff-rank", config.cutoff_rank,
                        "per-document qualification rank");
    extract->add_option("--tfidf-drop", config.tfidf_drop,
                        "fraction of lowest-TF-IDF phrases dropped");

    CLI::App* cluster = app.add_subcommand(
        "cluster", "group extracted key-phrases into semantic clusters");
    add_common(cluster);
    cluster->add_option("--keyphrases", keyphrase_file,
                        "keyphrases.json produced by extract");
    cluster->add_option("--algorithm", config.cluster_algorithm,
                        "spherical_kmeans|hac");
    cluster->add_option("-k,--k", config.k, "number of clusters");
    cluster->add_option("--k-min", config.k_min, "scan lower bound");
    cluster->add_option("--k-max", config.k_max, "scan upper bound");
    cluster->add_flag("--scan", config.scan,
                      "scan k in [k-min, k-max] and pick the best silhouette");
    cluster->add_option("--seed", config.seed, "clustering seed");
    cluster->add_option("--max-iter", config.max_iter, "k-means iteration cap");
    cluster->add_option("--tol", config.tol, "centroid movement tolerance");

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "score ranked predictions against gold terms");
    add_common(evaluate);
    evaluate->add_option("--predictions", ranked_csv,
                         "ranked.csv produced by extract");
    evaluate->add_option("--k-list", config.eval_ks,
                         "Top-k cut-offs (default 5 10 15)");

    CLI::App* stats =
        app.add_subcommand("stats", "corpus-level gold-term statistics");
    add_common(stats);

    CLI11_PARSE(app, argc, argv);

    if (extract->parsed()) return kex::run_extract(config);
    if (cluster->parsed()) return kex::run_cluster(config, keyphrase_file);
    if (evaluate->parsed()) return kex::run_evaluate(config, ranked_csv);
    if (stats->parsed()) return kex::run_stats(config);
    return kex::kExitBadInput;
}
