#include "kex/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kex {

namespace {

std::vector<Vector> unit_normalized(const std::vector<Vector>& vectors) {
    std::vector<Vector> out = vectors;
    for (Vector& v : out) normalize(v);
    return out;
}

double sq_distance(const Vector& u, const Vector& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double d = u[i] - v[i];
        s += d * d;
    }
    return s;
}

}  // namespace

ClusteringResult spherical_kmeans(const std::vector<Vector>& vectors, int k,
                                  std::uint64_t seed, int max_iter,
                                  double tol) {
    const int n = int(vectors.size());
    if (k < 2) throw std::invalid_argument("spherical_kmeans: k must be >= 2");
    if (k > n) throw std::invalid_argument("spherical_kmeans: k exceeds n");

    std::vector<Vector> pts = unit_normalized(vectors);
    const std::size_t dim = pts[0].size();

    // greedy farthest-point seeding; the seed picks the first center
    std::vector<int> seeds;
    std::vector<bool> chosen(n, false);
    int first = int(seed % std::uint64_t(n));
    seeds.push_back(first);
    chosen[first] = true;
    std::vector<double> min_dist(n);
    for (int i = 0; i < n; ++i)
        min_dist[i] = 1.0 - dot(pts[i], pts[first]);
    while (int(seeds.size()) < k) {
        int best = -1;
        double best_d = -1.0;
        for (int i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            if (min_dist[i] > best_d) {
                best_d = min_dist[i];
                best = i;
            }
        }
        seeds.push_back(best);
        chosen[best] = true;
        for (int i = 0; i < n; ++i)
            min_dist[i] = std::min(min_dist[i], 1.0 - dot(pts[i], pts[best]));
    }

    std::vector<Vector> centroids;
    centroids.reserve(k);
    for (int s : seeds) centroids.push_back(pts[s]);

    std::vector<int> labels(n, -1);
    double prev_objective = std::numeric_limits<double>::infinity();
    double objective = 0.0;

    for (int iter = 0; iter < max_iter; ++iter) {
        // assignment
        std::vector<int> new_labels(n);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_dot = dot(pts[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = dot(pts[i], centroids[c]);
                if (d > best_dot) {
                    best_dot = d;
                    best = c;
                }
            }
            new_labels[i] = best;
        }

        // repair empty clusters by stealing the farthest point
        std::vector<int> sizes(k, 0);
        for (int l : new_labels) ++sizes[l];
        for (int c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            int steal = -1;
            double worst = -1.0;
            for (int i = 0; i < n; ++i) {
                if (sizes[new_labels[i]] <= 1) continue;
                double d = 1.0 - dot(pts[i], centroids[new_labels[i]]);
                if (d > worst) {
                    worst = d;
                    steal = i;
                }
            }
            if (steal < 0) break;
            --sizes[new_labels[steal]];
            new_labels[steal] = c;
            ++sizes[c];
            centroids[c] = pts[steal];
        }

        objective = 0.0;
        for (int i = 0; i < n; ++i)
            objective += 1.0 - dot(pts[i], centroids[new_labels[i]]);
        if (objective > prev_objective + 1e-9)
            throw std::logic_error(
                "spherical_kmeans: objective increased between iterations");
        prev_objective = objective;

        bool unchanged = new_labels == labels;
        labels = std::move(new_labels);

        // update
        std::vector<Vector> updated(k, Vector(dim, 0.0));
        for (int i = 0; i < n; ++i)
            for (std::size_t d = 0; d < dim; ++d)
                updated[labels[i]][d] += pts[i][d];
        double movement = 0.0;
        for (int c = 0; c < k; ++c) {
            double nrm = norm(updated[c]);
            if (nrm > 0.0) {
                for (double& x : updated[c]) x /= nrm;
            } else {
                updated[c] = centroids[c];  // degenerate antipodal mean
            }
            movement = std::max(movement,
                                std::sqrt(sq_distance(updated[c], centroids[c])));
        }
        centroids = std::move(updated);
        if (unchanged || movement < tol) break;
    }

    // final objective against the final centroids
    objective = 0.0;
    for (int i = 0; i < n; ++i)
        objective += 1.0 - dot(pts[i], centroids[labels[i]]);

    ClusteringResult result;
    result.algorithm = ClusterAlgorithm::spherical_kmeans;
    result.k = k;
    result.labels = labels;
    result.centroids = centroids;
    result.objective = objective;
    result.silhouette = k >= 2 ? silhouette_cosine(vectors, labels) : 0.0;
    return result;
}

Dendrogram hac_average_cosine(const std::vector<Vector>& vectors) {
    const int n = int(vectors.size());
    if (n < 2) throw std::invalid_argument("hac: need at least two vectors");
    std::vector<Vector> pts = unit_normalized(vectors);

    struct Active {
        int id;    // dendrogram cluster id
        int size;
    };
    std::vector<Active> active(n);
    for (int i = 0; i < n; ++i) active[i] = {i, 1};

    // distance matrix between active slots
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = 1.0 - dot(pts[i], pts[j]);

    Dendrogram d;
    d.n = n;
    int next_id = n;
    std::vector<bool> alive(n, true);

    for (int step = 0; step < n - 1; ++step) {
        int bi = -1, bj = -1;
        double best = std::numeric_limits<double>::infinity();
        int best_a = 0, best_b = 0;
        for (int i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (!alive[j]) continue;
                int a = std::min(active[i].id, active[j].id);
                int b = std::max(active[i].id, active[j].id);
                double dd = dist[i][j];
                if (dd < best ||
                    (dd == best && (a < best_a || (a == best_a && b < best_b)))) {
                    best = dd;
                    bi = i;
                    bj = j;
                    best_a = a;
                    best_b = b;
                }
            }
        }

        Merge m;
        m.a = best_a;
        m.b = best_b;
        m.distance = best;
        m.size = active[bi].size + active[bj].size;
        d.merges.push_back(m);

        // Lance-Williams average-linkage update into slot bi
        double si = active[bi].size, sj = active[bj].size;
        for (int t = 0; t < n; ++t) {
            if (!alive[t] || t == bi || t == bj) continue;
            double nd = (si * dist[bi][t] + sj * dist[bj][t]) / (si + sj);
            dist[bi][t] = dist[t][bi] = nd;
        }
        active[bi] = {next_id++, m.size};
        alive[bj] = false;
    }
    return d;
}

std::vector<int> cut_dendrogram(const Dendrogram& d, int k) {
    const int n = d.n;
    if (k < 1 || k > n)
        throw std::invalid_argument("cut_dendrogram: k out of range");

    // union-find over dendrogram ids, applying the first n-k merges
    std::vector<int> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n - k; ++i) {
        const Merge& m = d.merges[i];
        int cluster_id = n + i;
        parent[find(m.a)] = cluster_id;
        parent[find(m.b)] = cluster_id;
    }

    std::vector<int> labels(n, -1);
    std::vector<int> root_label(2 * n - 1, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_label[r] < 0) root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return labels;
}

double silhouette_cosine(const std::vector<Vector>& vectors,
                         const std::vector<int>& labels) {
    const int n = int(vectors.size());
    if (int(labels.size()) != n)
        throw std::invalid_argument("silhouette: labels/vectors mismatch");
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    if (k < 2) throw std::invalid_argument("silhouette: need >= 2 clusters");

    std::vector<Vector> pts = unit_normalized(vectors);
    std::vector<int> sizes(k, 0);
    for (int l : labels) ++sizes[l];

    double sum = 0.0;
    std::vector<double> cluster_dist(k);
    for (int i = 0; i < n; ++i) {
        if (sizes[labels[i]] <= 1) continue;  // singleton contributes 0
        std::fill(cluster_dist.begin(), cluster_dist.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            cluster_dist[labels[j]] += 1.0 - dot(pts[i], pts[j]);
        }
        double a = cluster_dist[labels[i]] / double(sizes[labels[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == labels[i] || sizes[c] == 0) continue;
            b = std::min(b, cluster_dist[c] / double(sizes[c]));
        }
        double denom = std::max(a, b);
        if (denom > 0.0) sum += (b - a) / denom;
    }
    return sum / double(n);
}

KScanResult scan_k(const std::vector<Vector>& vectors, int k_min, int k_max,
                   ClusterAlgorithm algorithm, std::uint64_t seed,
                   int max_iter, double tol) {
    const int n = int(vectors.size());
    if (k_min < 2) throw std::invalid_argument("scan_k: k_min must be >= 2");
    KScanResult result;
    if (k_max > n) {
        k_max = n;
        result.clamped = true;
    }
    if (k_min > k_max)
        throw std::invalid_argument("scan_k: empty k range after clamping");

    Dendrogram dendro;
    if (algorithm == ClusterAlgorithm::hac) dendro = hac_average_cosine(vectors);

    double best_sil = -std::numeric_limits<double>::infinity();
    for (int k = k_min; k <= k_max; ++k) {
        double sil;
        if (algorithm == ClusterAlgorithm::spherical_kmeans) {
            sil = spherical_kmeans(vectors, k, seed, max_iter, tol).silhouette;
        } else {
            sil = silhouette_cosine(vectors, cut_dendrogram(dendro, k));
        }
        result.entries.push_back({k, sil});
        if (sil > best_sil) {
            best_sil = sil;
            result.best_k = k;
        }
    }
    return result;
}

}  // namespace kex
