#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wrw/graph.hpp"
#include "wrw/motif.hpp"

namespace wrw {

struct ExactCounts {
    int k = 0;
    std::vector<std::uint64_t> counts;  // per motif m, index m-1
    std::uint64_t total = 0;            // |S(k)|
    double wall_seconds = 0;

    double concentration(int m) const {
        return static_cast<double>(counts[m - 1]) / static_cast<double>(total);
    }
};

struct CisBudgetExceeded : std::runtime_error {
    CisBudgetExceeded(std::uint64_t seen_arg, std::uint64_t budget_arg)
        : std::runtime_error("connected-subgraph budget exceeded: enumerated " +
                             std::to_string(seen_arg) + " of allowed " +
                             std::to_string(budget_arg)),
          seen(seen_arg),
          budget(budget_arg) {}
    std::uint64_t seen;
    std::uint64_t budget;
};

struct ExactOptions {
    std::uint64_t cis_budget = 1'000'000'000;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Exact per-motif counts via exclusive-neighborhood expansion: every
// connected k-vertex set is generated exactly once. Parallel over root
// vertices. Throws CisBudgetExceeded past options.cis_budget.
ExactCounts enumerate_exact(const Graph& g, int k, const MotifCatalog& catalog,
                            const ExactOptions& options = {});

// Test oracle: all C(n, k) vertex subsets, keeping connected ones. n <= 14.
ExactCounts brute_force_subsets(const Graph& g, int k, const MotifCatalog& catalog);

}  // namespace wrw
