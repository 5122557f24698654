#ifndef KEX_ACCEPTANCE_SUPPORT_HPP
#define KEX_ACCEPTANCE_SUPPORT_HPP

#include <functional>
#include <string>
#include <vector>

#include "kex/embeddings.hpp"

namespace kex::acceptance {

// adjusted Rand index between two labelings
double adjusted_rand_index(const std::vector<int>& a,
                           const std::vector<int>& b);

struct Criterion {
    int number;
    std::string name;
    std::function<void()> run;  // throws on failure
};

// runs all criteria, prints one [PASS]/[FAIL] line per criterion,
// returns the number of failures
int run_criteria(const std::vector<Criterion>& criteria);

void require(bool cond, const std::string& message);

std::string data_path(const std::string& rel);

}  // namespace kex::acceptance

#endif
