#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace kex::acceptance {

double adjusted_rand_index(const std::vector<int>& a,
                           const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("ARI: label size mismatch");
    const double n = double(a.size());
    std::map<std::pair<int, int>, long> cells;
    std::map<int, long> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++cells[{a[i], b[i]}];
        ++rows[a[i]];
        ++cols[b[i]];
    }
    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double sum_cells = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [k, v] : cells) sum_cells += choose2(double(v));
    for (const auto& [k, v] : rows) sum_rows += choose2(double(v));
    for (const auto& [k, v] : cols) sum_cols += choose2(double(v));
    double expected = sum_rows * sum_cols / choose2(n);
    double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;
    return (sum_cells - expected) / (max_index - expected);
}

void require(bool cond, const std::string& message) {
    if (!cond) throw std::runtime_error(message);
}

std::string data_path(const std::string& rel) {
    return std::string(KEX_DATA_DIR) + "/" + rel;
}

int run_criteria(const std::vector<Criterion>& criteria) {
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string error;
        bool ok = true;
        try {
            c.run();
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        if (ok) {
            std::printf("[PASS] criterion %2d: %s (%.2fs)\n", c.number,
                        c.name.c_str(), secs);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.2fs) — %s\n", c.number,
                        c.name.c_str(), secs, error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}

}  // namespace kex::acceptance
