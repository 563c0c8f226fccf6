#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wrw/graph.hpp"
#include "wrw/rng.hpp"

namespace wrw {

struct QueryLedger {
    std::uint64_t distinct = 0;  // unique nodes whose neighbor list was fetched
    std::uint64_t total = 0;     // every fetch request, revisits included
};

// Neighbor-query access model. fetch() is a priced request (the unit the
// query budget counts); peek() re-reads already-fetched data for free, which
// is how degrees and adjacency among visited nodes are resolved.
class NeighborProvider {
public:
    virtual ~NeighborProvider() = default;

    virtual std::span<const NodeId> fetch(NodeId v) = 0;
    virtual std::span<const NodeId> peek(NodeId v) const = 0;
    virtual bool fetched(NodeId v) const = 0;
    virtual std::uint32_t node_count() const = 0;

    std::uint32_t degree_of_fetched(NodeId v) const {
        return static_cast<std::uint32_t>(peek(v).size());
    }

    // Adjacency test preferring a fetched endpoint; fetches u when neither
    // side has been seen (the one place a waddle node costs budget).
    bool adjacent(NodeId u, NodeId v);

    const QueryLedger& ledger() const { return ledger_; }

protected:
    QueryLedger ledger_;
};

class LocalProvider final : public NeighborProvider {
public:
    explicit LocalProvider(const Graph& g) : g_(&g), fetched_(g.node_count(), 0) {}

    std::span<const NodeId> fetch(NodeId v) override {
        ++ledger_.total;
        if (!fetched_[v]) {
            fetched_[v] = 1;
            ++ledger_.distinct;
        }
        return g_->neighbors(v);
    }
    std::span<const NodeId> peek(NodeId v) const override { return g_->neighbors(v); }
    bool fetched(NodeId v) const override { return fetched_[v] != 0; }
    std::uint32_t node_count() const override { return g_->node_count(); }

private:
    const Graph* g_;
    std::vector<std::uint8_t> fetched_;
};

struct WalkConfig {
    std::uint64_t seed = 0;
    std::uint32_t run_index = 0;
    std::uint32_t burn_in = 1000;
    std::optional<std::uint64_t> query_budget;  // Q, distinct fetches
    std::optional<std::uint64_t> step_budget;   // n, post-burn-in steps
    std::optional<NodeId> start;                // uniform over nodes if unset
};

// Simple random walk with a ring buffer of the last visited nodes (the
// window R_i^{(s)}) and per-run named RNG streams.
class WalkState {
public:
    static constexpr int kMaxWindow = 8;

    WalkState(std::uint64_t seed, std::uint32_t run_index)
        : walk_(seed, run_index, kStreamWalk),
          waddle_(seed, run_index, kStreamWaddle),
          start_(seed, run_index, kStreamStart) {}

    void start(NeighborProvider& p, std::optional<NodeId> start_node);

    NodeId current() const { return ring_[(count_ - 1) & 7]; }

    // Fetches the current node's list, moves to a uniform neighbor.
    NodeId step(NeighborProvider& p);

    void burn_in(NeighborProvider& p, std::uint32_t steps);
    bool burned_in() const { return burned_; }
    std::uint64_t step_index() const { return steps_; }

    // Last s visited nodes, oldest first; false if fewer have been seen.
    bool window(int s, std::span<NodeId> out) const {
        if (count_ < static_cast<std::uint32_t>(s)) return false;
        for (int i = 0; i < s; ++i) out[i] = ring_[(count_ - s + i) & 7];
        return true;
    }

    Rng& waddle_rng() { return waddle_; }

private:
    std::array<NodeId, kMaxWindow> ring_{};
    std::uint32_t count_ = 0;  // visited nodes including the start
    std::uint64_t steps_ = 0;
    bool burned_ = false;
    Rng walk_, waddle_, start_;
};

struct WaddleSample {
    std::array<NodeId, 4> nodes{};
    int count = 0;
    double probability = 1.0;  // phi(W | R) = d(anchor)^-count
};

// `count` independent uniform draws from the anchor's (already fetched)
// neighbor list; duplicates possible by design.
WaddleSample waddle_sample(NeighborProvider& p, NodeId anchor, int count, Rng& rng);

// Product of the interior window degrees d(r_{i-1}) ... d(r_{i-s+2});
// 1 for s = 2. `window` is oldest-first.
double path_weight(const NeighborProvider& p, std::span<const NodeId> window);

}  // namespace wrw
