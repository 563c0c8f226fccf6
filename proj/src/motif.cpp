#include "wrw/motif.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wrw/graph.hpp"

namespace wrw {

namespace {

constexpr int kMaxK = 5;

int pair_count(int k) { return k * (k - 1) / 2; }

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Per-vertex neighbor bitsets of a mask graph.
std::array<std::uint8_t, kMaxK> adjacency_bits(std::uint16_t mask, int k) {
    std::array<std::uint8_t, kMaxK> nbr{};
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if (mask & (1u << pair_index(i, j))) {
                nbr[i] |= static_cast<std::uint8_t>(1u << j);
                nbr[j] |= static_cast<std::uint8_t>(1u << i);
            }
    return nbr;
}

std::uint16_t permute_mask(std::uint16_t mask, int k, const std::array<int, kMaxK>& perm) {
    std::uint16_t out = 0;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if (mask & (1u << pair_index(i, j))) {
                const int a = std::min(perm[i], perm[j]);
                const int b = std::max(perm[i], perm[j]);
                out |= static_cast<std::uint16_t>(1u << pair_index(a, b));
            }
    return out;
}

struct WalkAnalysis {
    int l = 0;                                           // shortest covering walk
    std::map<int, std::int64_t> walk_counts;             // s -> covering walks
    std::map<int, std::vector<std::vector<std::uint8_t>>> walk_embeddings;
};

// BFS over (current vertex, visited set) states for l; DFS enumeration of the
// covering walks afterwards.
WalkAnalysis analyze_covering_walks(const std::array<std::uint8_t, kMaxK>& nbr, int k) {
    WalkAnalysis out;
    const std::uint8_t full = static_cast<std::uint8_t>((1u << k) - 1);

    std::vector<int> dist(static_cast<std::size_t>(k) << k, -1);
    std::vector<std::pair<int, std::uint8_t>> queue;
    for (int v = 0; v < k; ++v) {
        dist[static_cast<std::size_t>(v) << k | (1u << v)] = 1;
        queue.emplace_back(v, static_cast<std::uint8_t>(1u << v));
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [v, seen] = queue[head];
        const int d = dist[static_cast<std::size_t>(v) << k | seen];
        if (seen == full) {
            out.l = d;
            break;
        }
        for (int w = 0; w < k; ++w) {
            if (!(nbr[v] & (1u << w))) continue;
            const auto seen2 = static_cast<std::uint8_t>(seen | (1u << w));
            auto& slot = dist[static_cast<std::size_t>(w) << k | seen2];
            if (slot < 0) {
                slot = d + 1;
                queue.emplace_back(w, seen2);
            }
        }
    }

    // Enumerate covering walks of each length up to l (branching <= k, depth
    // <= 7; tiny at k <= 5).
    std::vector<std::uint8_t> seq;
    auto dfs = [&](auto&& self, int v, std::uint8_t seen) -> void {
        seq.push_back(static_cast<std::uint8_t>(v));
        if (seen == full) out.walk_embeddings[static_cast<int>(seq.size())].push_back(seq);
        if (static_cast<int>(seq.size()) < out.l) {
            for (int w = 0; w < k; ++w)
                if (nbr[v] & (1u << w))
                    self(self, w, static_cast<std::uint8_t>(seen | (1u << w)));
        }
        seq.pop_back();
    };
    for (int v = 0; v < k; ++v) dfs(dfs, v, static_cast<std::uint8_t>(1u << v));
    for (auto& [s, walks] : out.walk_embeddings) out.walk_counts[s] = static_cast<std::int64_t>(walks.size());
    return out;
}

struct PathAnalysis {
    int L = 0;
    std::vector<std::vector<std::uint8_t>> embeddings;  // directed simple paths of length L
};

PathAnalysis analyze_simple_paths(const std::array<std::uint8_t, kMaxK>& nbr, int k) {
    PathAnalysis out;
    std::vector<std::uint8_t> seq;
    auto dfs = [&](auto&& self, int v, std::uint8_t seen) -> void {
        seq.push_back(static_cast<std::uint8_t>(v));
        const int len = static_cast<int>(seq.size());
        if (len > out.L) {
            out.L = len;
            out.embeddings.clear();
        }
        if (len == out.L) out.embeddings.push_back(seq);
        for (int w = 0; w < k; ++w)
            if ((nbr[v] & (1u << w)) && !(seen & (1u << w)))
                self(self, w, static_cast<std::uint8_t>(seen | (1u << w)));
        seq.pop_back();
    };
    for (int v = 0; v < k; ++v) dfs(dfs, v, static_cast<std::uint8_t>(1u << v));
    return out;
}

// Waddle protocol mirror: the estimator draws the k-L extra nodes uniformly
// from the neighbors of the window's second-oldest node. An embedding
// completes iff every off-path vertex is a motif-neighbor of its position-2
// vertex; completable embeddings then admit (k-L)! ordered assignments.
void derive_waddle_constants(MotifEntry& e, const std::array<std::uint8_t, kMaxK>& nbr, int k) {
    if (e.L == k) {
        e.pw = 1;
        e.Z = 1;
        return;
    }
    const auto& paths = e.embeddings.at(e.L);
    const std::uint8_t full = static_cast<std::uint8_t>((1u << k) - 1);
    e.pw = factorial(k - e.L);
    std::int64_t total = 0;
    std::vector<bool> completes(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& p = paths[i];
        std::uint8_t on_path = 0;
        for (auto v : p) on_path |= static_cast<std::uint8_t>(1u << v);
        const std::uint8_t off = static_cast<std::uint8_t>(full & ~on_path);
        completes[i] = (off & ~nbr[p[1]]) == 0;
        if (completes[i]) total += e.pw;
    }
    const std::int64_t pr_L = static_cast<std::int64_t>(paths.size());
    if (total == pr_L * e.pw) {
        e.Z = 1;
    } else if (2 * total == pr_L * e.pw) {
        e.Z = 2;
    } else {
        throw std::logic_error("waddle completion count is not P_r*P_w or half of it");
    }
    // Cross-check against the reversal definition of Z.
    for (std::size_t i = 0; i < paths.size(); ++i) {
        auto rev = paths[i];
        std::reverse(rev.begin(), rev.end());
        const auto it = std::find(paths.begin(), paths.end(), rev);
        const bool rev_completes = completes[static_cast<std::size_t>(it - paths.begin())];
        const bool consistent = (e.Z == 1) ? (completes[i] && rev_completes)
                                           : (completes[i] != rev_completes);
        if (!consistent) throw std::logic_error("Z is inconsistent with path reversal");
    }
}

struct AnchorRule {
    int m;
    bool (*matches)(const MotifEntry&);
};

// Structural identities of the pinned ids: unique by construction at each k.
const AnchorRule kAnchors3[] = {
    {1, [](const MotifEntry& e) { return e.edge_count == 2; }},
    {2, [](const MotifEntry& e) { return e.edge_count == 3; }},
};
const AnchorRule kAnchors4[] = {
    {1, [](const MotifEntry& e) { return e.L == 3; }},                       // star
    {2, [](const MotifEntry& e) { return e.edge_count == 3 && e.L == 4; }},  // path
    {6, [](const MotifEntry& e) { return e.edge_count == 6; }},              // clique
};
const AnchorRule kAnchors5[] = {
    {2, [](const MotifEntry& e) { return e.L == 4 && e.edge_count == 4; }},  // fork tree
    {3, [](const MotifEntry& e) { return e.L == 3; }},                       // star
    {6, [](const MotifEntry& e) { return e.L == 4 && e.edge_count == 5; }},  // triangle + 2 pendants
    {21, [](const MotifEntry& e) { return e.edge_count == 10; }},            // clique
};

std::span<const AnchorRule> anchors_for(int k) {
    switch (k) {
        case 3: return kAnchors3;
        case 4: return kAnchors4;
        default: return kAnchors5;
    }
}

void require(bool cond, const std::string& what) {
    if (!cond) throw std::logic_error("motif catalog self-check failed: " + what);
}

// Golden values quoted from the estimator derivation; the build refuses to
// hand out a catalog that contradicts them.
void check_catalog_anchors(const MotifCatalog& cat) {
    const int t[] = {0, 0, 0, 2, 6, 21};
    for (int k = 3; k <= cat.k_max(); ++k)
        require(cat.motif_count(k) == t[k], "T_" + std::to_string(k));

    const auto& wedge = cat.entry({3, 1});
    const auto& tri = cat.entry({3, 2});
    require(wedge.pr_at(3) == 2 && tri.pr_at(3) == 6, "3-node P_r values");

    if (cat.k_max() >= 4) {
        const auto& star = cat.entry({4, 1});
        require(star.l == 5 && star.L == 3, "M(4,1) l/L");
        require(star.pr_at(5) == 6 && star.pr_at(3) == 6 && star.pw == 1 && star.Z == 1,
                "M(4,1) constants");
        require(star.waddle_divisor() == 6, "M(4,1) divisor");
        const auto& path = cat.entry({4, 2});
        require(path.l == 4 && path.L == 4 && path.pr_at(4) == 2, "M(4,2) constants");
        require(cat.entry({4, 6}).pr_at(4) == 24, "M(4,6) P_r");
    }
    if (cat.k_max() >= 5) {
        require(cat.entry({5, 2}).waddle_divisor() == 2, "M(5,2) divisor");
        require(cat.entry({5, 6}).waddle_divisor() == 4, "M(5,6) divisor");
        require(cat.entry({5, 3}).waddle_divisor() == 24, "M(5,3) divisor");
        int waddled = 0;
        for (const auto& e : cat.entries(5)) waddled += e.L < 5;
        require(waddled == 3, "exactly three 5-node motifs have L < 5");
    }
}

}  // namespace

std::uint16_t canonical_code(std::uint16_t mask, int k) {
    std::array<int, kMaxK> perm{};
    std::iota(perm.begin(), perm.begin() + k, 0);
    std::uint16_t best = permute_mask(mask, k, perm);
    while (std::next_permutation(perm.begin(), perm.begin() + k))
        best = std::min(best, permute_mask(mask, k, perm));
    return best;
}

bool small_graph_connected(std::uint16_t mask, int k) {
    const auto nbr = adjacency_bits(mask, k);
    std::uint8_t reached = 1;
    for (;;) {
        std::uint8_t next = reached;
        for (int v = 0; v < k; ++v)
            if (reached & (1u << v)) next |= nbr[v];
        if (next == reached) break;
        reached = next;
    }
    return reached == (1u << k) - 1;
}

MotifCatalog build_catalog(int k_max) {
    if (k_max < 3 || k_max > kMaxK)
        throw std::invalid_argument("build_catalog: k_max must be in [3, 5]");

    MotifCatalog cat;
    cat.k_max_ = k_max;
    cat.per_k_.resize(k_max + 1);

    for (int k = 3; k <= k_max; ++k) {
        const int bits = pair_count(k);
        const std::uint32_t mask_count = 1u << bits;

        std::vector<std::uint16_t> codes;
        for (std::uint32_t mask = 0; mask < mask_count; ++mask)
            if (small_graph_connected(static_cast<std::uint16_t>(mask), k) &&
                canonical_code(static_cast<std::uint16_t>(mask), k) == mask)
                codes.push_back(static_cast<std::uint16_t>(mask));
        std::sort(codes.begin(), codes.end());

        std::vector<MotifEntry> built;
        for (std::uint16_t code : codes) {
            MotifEntry e;
            e.canonical_code = code;
            e.edge_count = std::popcount(static_cast<unsigned>(code));
            const auto nbr = adjacency_bits(code, k);

            auto walks = analyze_covering_walks(nbr, k);
            auto paths = analyze_simple_paths(nbr, k);
            e.l = walks.l;
            e.L = paths.L;
            e.pr[e.L] = static_cast<std::int64_t>(paths.embeddings.size());
            e.embeddings[e.L] = std::move(paths.embeddings);
            for (int s = e.L + 1; s <= e.l; ++s) {
                e.pr[s] = walks.walk_counts.count(s) ? walks.walk_counts[s] : 0;
                if (e.pr[s] > 0) e.embeddings[s] = std::move(walks.walk_embeddings[s]);
            }
            if (e.L == k)
                require(e.pr[k] == walks.walk_counts[k],
                        "Hamiltonian path count disagrees with covering-walk count");
            derive_waddle_constants(e, nbr, k);
            built.push_back(std::move(e));
        }

        // Pinned ids first, remaining motifs by (edge count, canonical code).
        const int total = static_cast<int>(built.size());
        std::vector<int> slot_of(built.size(), 0);
        std::vector<bool> slot_used(total + 1, false);
        for (const auto& rule : anchors_for(k)) {
            int hits = 0;
            for (std::size_t i = 0; i < built.size(); ++i) {
                if (rule.matches(built[i])) {
                    slot_of[i] = rule.m;
                    slot_used[rule.m] = true;
                    ++hits;
                }
            }
            require(hits == 1, "anchor rule matched " + std::to_string(hits) + " motifs");
        }
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < built.size(); ++i)
            if (slot_of[i] == 0) rest.push_back(i);
        std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
            return std::pair(built[a].edge_count, built[a].canonical_code) <
                   std::pair(built[b].edge_count, built[b].canonical_code);
        });
        int next_slot = 1;
        for (std::size_t i : rest) {
            while (slot_used[next_slot]) ++next_slot;
            slot_of[i] = next_slot;
            slot_used[next_slot] = true;
        }

        auto& pk = cat.per_k_[k];
        pk.entries.resize(built.size());
        for (std::size_t i = 0; i < built.size(); ++i) {
            built[i].id = {k, slot_of[i]};
            pk.entries[static_cast<std::size_t>(slot_of[i] - 1)] = std::move(built[i]);
        }

        pk.classify_table.assign(mask_count, 0);
        std::map<std::uint16_t, int> m_of_code;
        for (const auto& e : pk.entries) m_of_code[e.canonical_code] = e.id.m;
        for (std::uint32_t mask = 0; mask < mask_count; ++mask)
            if (small_graph_connected(static_cast<std::uint16_t>(mask), k))
                pk.classify_table[mask] = static_cast<std::int8_t>(
                    m_of_code.at(canonical_code(static_cast<std::uint16_t>(mask), k)));

        std::map<int, std::vector<int>, std::greater<>> groups;
        for (const auto& e : pk.entries) {
            pk.max_window = std::max(pk.max_window, e.l);
            if (e.L < k) groups[e.L].push_back(e.id.m);
        }
        for (auto& [s, motifs] : groups) pk.waddle_groups.push_back({s, std::move(motifs)});
    }

    check_catalog_anchors(cat);
    return cat;
}

std::vector<std::uint8_t> random_path_embedding(const MotifEntry& e, int s, Rng& rng) {
    const auto& options = e.embeddings.at(s);
    return options[static_cast<std::size_t>(rng.below(options.size()))];
}

}  // namespace wrw
