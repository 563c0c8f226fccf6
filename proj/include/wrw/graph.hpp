#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wrw {

using NodeId = std::uint32_t;

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line_arg)
        : std::runtime_error(what), line(line_arg) {}
    std::size_t line;
};

struct EmptyGraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable undirected simple graph in CSR form. Neighbor lists are sorted,
// deduplicated and self-loop free; degree_sum() is D = sum of all degrees.
// External (input file) ids are retained so reports can name original nodes.
class Graph {
public:
    Graph() = default;

    // Builds from internal-id edges. Symmetrizes, drops self-loops and
    // duplicates. external_ids maps internal id -> original label and must
    // cover every endpoint.
    static Graph from_edges(std::vector<std::pair<NodeId, NodeId>> edges,
                            std::vector<std::uint64_t> external_ids);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(offsets_.size() - 1); }
    std::uint64_t edge_count() const { return adj_.size() / 2; }
    std::uint64_t degree_sum() const { return adj_.size(); }

    std::uint32_t degree(NodeId v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    bool adjacent(NodeId u, NodeId v) const;

    std::uint64_t external_id(NodeId v) const { return ext_[v]; }
    const std::vector<std::uint64_t>& external_ids() const { return ext_; }

private:
    std::vector<std::uint64_t> offsets_{0};
    std::vector<NodeId> adj_;
    std::vector<std::uint64_t> ext_;
};

// Edge-list text: one edge per line, two non-negative integer tokens; lines
// starting with '#' or '%' (and blank lines) are skipped. Input is
// symmetrized, deduplicated and self-loop free after loading; external ids
// are remapped to dense internal ids in first-seen order.
Graph load_edge_list(std::istream& in, const std::string& source_name = "<stream>");
Graph load_edge_list_file(const std::string& path);

// One "ext(u) ext(v)" line per undirected edge, u < v by internal id.
void write_edge_list(const Graph& g, std::ostream& out);

bool is_connected(const Graph& g);

// Induced subgraph on the largest component (ties: component containing the
// smallest internal id). Internal ids are re-densified preserving relative
// order; external ids follow the surviving nodes.
Graph largest_connected_component(const Graph& g);

// Pair-bit index for small-subgraph edge masks: bit pair_index(i, j), i < j,
// is the edge between the i-th and j-th node of a given node list.
constexpr int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }

// Edge bitmask of the subgraph induced by 2..5 nodes, bits in pair_index
// order over positions of `nodes`.
std::uint16_t induced_subgraph_edges(const Graph& g, std::span<const NodeId> nodes);

}  // namespace wrw
