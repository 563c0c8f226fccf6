#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wrw/rng.hpp"

namespace wrw {

// Motif M(k, m): the m-th (1-based) connected undirected graph on k vertices.
struct MotifId {
    int k = 0;
    int m = 0;
    friend bool operator==(const MotifId&, const MotifId&) = default;
};

// Per-motif constants used by the walk estimators.
//
//   l  - vertex count of the shortest walk (repeats allowed) covering the motif
//   L  - vertex count of the longest simple path
//   pr - s -> number of directed s-vertex walks covering all k vertices;
//        at s = L (< k) it counts the directed longest-simple-path embeddings
//   pw - ordered assignments of the k-L waddle draws onto the off-path
//        vertices, given a completable path embedding (1 when L == k)
//   Z  - 2 if a path embedding and its reversal never both admit a waddle
//        completion, else 1
struct MotifEntry {
    MotifId id;
    std::uint16_t canonical_code = 0;
    int edge_count = 0;
    int l = 0;
    int L = 0;
    int Z = 1;
    std::int64_t pw = 1;
    std::map<int, std::int64_t> pr;
    // s -> all embeddings counted by pr[s], each a vertex sequence of the motif
    std::map<int, std::vector<std::vector<std::uint8_t>>> embeddings;

    std::int64_t pr_at(int s) const { return pr.at(s); }
    // P_r(k,m,L) * P_w / Z, the divisor used by the waddle branch
    std::int64_t waddle_divisor() const { return pr.at(L) * pw / Z; }
};

class MotifCatalog {
public:
    int k_max() const { return k_max_; }
    int motif_count(int k) const { return static_cast<int>(per_k_[k].entries.size()); }

    std::span<const MotifEntry> entries(int k) const { return per_k_[k].entries; }
    const MotifEntry& entry(MotifId id) const { return per_k_[id.k].entries[id.m - 1]; }

    // m (1-based) of the motif a connected edge mask induces, 0 if the mask
    // does not connect all `size` vertices. Label-invariant.
    int classify(std::uint16_t mask, int size) const { return per_k_[size].classify_table[mask]; }

    // Window sizes s < k used by the waddle branches, descending, with the
    // motif ids (all having L == s) recognized there.
    struct WaddleGroup {
        int s;
        std::vector<int> motifs;
    };
    std::span<const WaddleGroup> waddle_groups(int k) const { return per_k_[k].waddle_groups; }

    // Largest window any estimator needs for motifs of size k (= max l).
    int max_window(int k) const { return per_k_[k].max_window; }

    friend MotifCatalog build_catalog(int k_max);

private:
    struct PerK {
        std::vector<MotifEntry> entries;
        std::vector<std::int8_t> classify_table;
        std::vector<WaddleGroup> waddle_groups;
        int max_window = 0;
    };
    int k_max_ = 0;
    std::vector<PerK> per_k_;  // indexed by k, 0..k_max
};

// Enumerates all connected motifs for k in {3..k_max} (3 <= k_max <= 5) and
// derives every constant by brute force over the motif itself. Throws
// std::logic_error if the derived table contradicts its pinned anchor values.
MotifCatalog build_catalog(int k_max);

// One of the pr[s] embeddings, uniformly at random.
std::vector<std::uint8_t> random_path_embedding(const MotifEntry& e, int s, Rng& rng);

// Minimum edge bitmask over all k! vertex permutations.
std::uint16_t canonical_code(std::uint16_t mask, int k);

bool small_graph_connected(std::uint16_t mask, int k);

}  // namespace wrw
