#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wrw/graph.hpp"
#include "wrw/motif.hpp"
#include "wrw/walk.hpp"

namespace wrw {

// Per-run running sums. c[m-1] accumulates the unbiased per-step increments
// for motif m with every divisor already folded in, so c[m-1] / t estimates
// |S(k,m)| / D and accumulators merge by plain addition.
struct EstimateAccumulator {
    int k = 0;
    std::vector<double> c;
    std::uint64_t t = 0;  // post-burn-in steps, including zero-contribution ones
    std::uint32_t runs_merged = 1;
    double inv_degree_sum = 0;  // sum of 1/d over post-burn-in walk positions
    std::uint64_t queries_distinct = 0;
    std::uint64_t queries_total = 0;

    double c_total() const;
    void merge(const EstimateAccumulator& other);
};

struct NoSamplesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sliding-window estimator without waddling: motif m is recognized in a
// window of s = l(k,m) nodes whose distinct count is exactly k.
EstimateAccumulator estimate_no_waddle(const Graph& g, int k, const MotifCatalog& catalog,
                                       const WalkConfig& config);

// Waddling random walk for any k in the catalog: distinct k-windows are
// classified directly; motifs with L < k are sampled from shorter distinct
// windows completed by waddle draws from the second-oldest window node.
EstimateAccumulator estimate_wrw_generic(const Graph& g, int k, const MotifCatalog& catalog,
                                         const WalkConfig& config);

// Hand-specialized 4-node and 5-node versions; sample-for-sample identical
// to estimate_wrw_generic under the same seed.
EstimateAccumulator estimate_wrw_4(const Graph& g, const MotifCatalog& catalog,
                                   const WalkConfig& config);
EstimateAccumulator estimate_wrw_5(const Graph& g, const MotifCatalog& catalog,
                                   const WalkConfig& config);

// c_m / c_t per motif; throws NoSamplesError when c_t == 0.
std::vector<double> finalize_concentrations(const EstimateAccumulator& acc);

// D-hat = |V| / mean(1/d) over a dedicated walk of about
// sample_fraction * |V| post-burn-in steps.
double estimate_degree_sum(const Graph& g, double sample_fraction, const WalkConfig& config);

// Same estimate from sums an estimator run already collected.
double degree_sum_estimate(const EstimateAccumulator& acc, std::uint64_t node_count);

// |S-hat(k,m)| = (c_m / t) * D-hat; nullopt when the motif was never sampled.
std::optional<double> estimate_motif_count(const EstimateAccumulator& acc,
                                           double degree_sum_est, MotifId id);

// Walk-length planning from the concentration tail bound. Advisory: xi and
// c_const are existence-level constants, defaulted from the proof's exponent.
struct BoundInputs {
    double mixing_time = 0;         // T
    double degree_sum = 0;          // D
    double top_degree_product = 0;  // product of the top k degrees
    double motif_count = 0;         // |S(k,m)| or a lower bound
    double delta = 0;
    double alpha = 0;
    double xi = 72;
    double c_const = 1;
};

struct BoundResult {
    double t_min;
    double lower_factor;  // 1 - 2*delta / (1 + delta)
    double upper_factor;  // 1 + 2*delta / (1 - delta)
    double confidence;    // > 1 - 2*alpha
};

BoundResult required_steps(const BoundInputs& b);

}  // namespace wrw
