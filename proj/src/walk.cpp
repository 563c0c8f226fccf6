#include "wrw/walk.hpp"

#include <algorithm>
#include <stdexcept>

namespace wrw {

bool NeighborProvider::adjacent(NodeId u, NodeId v) {
    std::span<const NodeId> list;
    NodeId needle;
    if (fetched(u)) {
        list = peek(u);
        needle = v;
    } else if (fetched(v)) {
        list = peek(v);
        needle = u;
    } else {
        list = fetch(u);
        needle = v;
    }
    return std::binary_search(list.begin(), list.end(), needle);
}

void WalkState::start(NeighborProvider& p, std::optional<NodeId> start_node) {
    NodeId v;
    if (start_node) {
        v = *start_node;
        if (v >= p.node_count()) throw std::invalid_argument("start node out of range");
    } else {
        v = static_cast<NodeId>(start_.below(p.node_count()));
    }
    ring_[0] = v;
    count_ = 1;
}

NodeId WalkState::step(NeighborProvider& p) {
    const auto nb = p.fetch(current());
    if (nb.empty()) throw std::runtime_error("random walk reached an isolated node");
    const NodeId next = nb[walk_.below(nb.size())];
    ring_[count_ & 7] = next;
    ++count_;
    ++steps_;
    return next;
}

void WalkState::burn_in(NeighborProvider& p, std::uint32_t steps) {
    for (std::uint32_t i = 0; i < steps; ++i) (void)step(p);
    burned_ = true;
}

WaddleSample waddle_sample(NeighborProvider& p, NodeId anchor, int count, Rng& rng) {
    WaddleSample out;
    out.count = count;
    const auto nb = p.peek(anchor);
    const double inv_degree = 1.0 / static_cast<double>(nb.size());
    for (int i = 0; i < count; ++i) {
        out.nodes[i] = nb[rng.below(nb.size())];
        out.probability *= inv_degree;
    }
    return out;
}

double path_weight(const NeighborProvider& p, std::span<const NodeId> window) {
    double w = 1.0;
    for (std::size_t i = 1; i + 1 < window.size(); ++i)
        w *= static_cast<double>(p.degree_of_fetched(window[i]));
    return w;
}

}  // namespace wrw
