#ifndef KEX_CLUSTERING_HPP
#define KEX_CLUSTERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kex/embeddings.hpp"

namespace kex {

enum class ClusterAlgorithm { spherical_kmeans, hac };

struct ClusteringResult {
    ClusterAlgorithm algorithm = ClusterAlgorithm::spherical_kmeans;
    int k = 0;
    std::vector<int> labels;
    std::vector<Vector> centroids;  // spherical k-means only, unit length
    double silhouette = 0.0;
    double objective = 0.0;  // final sum of cosine distances to centroids
};

// k-means on the unit hypersphere: greedy farthest-point seeding under
// cosine distance, max-dot assignment, mean-then-renormalize update.
// Deterministic given seed. Throws if k < 2 or k > n.
ClusteringResult spherical_kmeans(const std::vector<Vector>& vectors, int k,
                                  std::uint64_t seed, int max_iter = 300,
                                  double tol = 1e-6);

struct Merge {
    int a = 0;
    int b = 0;
    double distance = 0.0;
    int size = 0;  // size of the merged cluster
};

// Merge order: clusters 0..n-1 are the singletons; merge i creates
// cluster n+i. Average linkage over cosine distance, ties to the
// smallest (a, b) pair.
struct Dendrogram {
    int n = 0;
    std::vector<Merge> merges;  // exactly n-1, distances non-decreasing
};

Dendrogram hac_average_cosine(const std::vector<Vector>& vectors);

// Undo the last k-1 merges and label the components (labels ordered by
// smallest member index).
std::vector<int> cut_dendrogram(const Dendrogram& d, int k);

// Mean silhouette with cosine distance; singletons and degenerate
// zero-distance points contribute 0. Throws on a single cluster.
double silhouette_cosine(const std::vector<Vector>& vectors,
                         const std::vector<int>& labels);

struct KScanEntry {
    int k = 0;
    double silhouette = 0.0;
};

struct KScanResult {
    std::vector<KScanEntry> entries;
    int best_k = 0;  // argmax silhouette, ties to smaller k
    bool clamped = false;
};

KScanResult scan_k(const std::vector<Vector>& vectors, int k_min, int k_max,
                   ClusterAlgorithm algorithm, std::uint64_t seed,
                   int max_iter = 300, double tol = 1e-6);

}  // namespace kex

#endif
