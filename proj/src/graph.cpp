#include "wrw/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <unordered_map>

namespace wrw {

Graph Graph::from_edges(std::vector<std::pair<NodeId, NodeId>> edges,
                        std::vector<std::uint64_t> external_ids) {
    const auto n = static_cast<NodeId>(external_ids.size());
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.empty()) throw EmptyGraphError("graph has no edges after normalization");

    Graph g;
    g.ext_ = std::move(external_ids);
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    // Sorted inputs already leave each list sorted except the back-edges;
    // sort per node to keep the invariant simple.
    for (NodeId v = 0; v < n; ++v) {
        auto* first = g.adj_.data() + g.offsets_[v];
        std::sort(first, g.adj_.data() + g.offsets_[v + 1]);
    }
    return g;
}

bool Graph::adjacent(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#' || c == '%';
    }
    return true;
}

}  // namespace

Graph load_edge_list(std::istream& in, const std::string& source_name) {
    std::unordered_map<std::uint64_t, NodeId> id_of;
    std::vector<std::uint64_t> ext;
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto intern = [&](std::uint64_t raw) {
        auto [it, inserted] = id_of.try_emplace(raw, static_cast<NodeId>(ext.size()));
        if (inserted) ext.push_back(raw);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        std::uint64_t a = 0, b = 0;
        std::size_t pos = 0;
        const char* s = line.c_str();
        auto parse_token = [&](std::uint64_t& out) {
            while (s[pos] && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
            out = 0;
            while (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                out = out * 10 + static_cast<std::uint64_t>(s[pos] - '0');
                ++pos;
            }
            return s[pos] == '\0' || std::isspace(static_cast<unsigned char>(s[pos]));
        };
        bool ok = parse_token(a) && parse_token(b);
        if (ok) {
            while (s[pos] && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            ok = s[pos] == '\0';
        }
        if (!ok) {
            throw ParseError(source_name + ":" + std::to_string(line_no) +
                                 ": expected two non-negative integer tokens, got '" + line + "'",
                             line_no);
        }
        if (a == b) continue;  // self-loop, dropped before id assignment
        edges.emplace_back(intern(a), intern(b));
    }
    if (edges.empty()) throw EmptyGraphError(source_name + ": empty edge set");
    return Graph::from_edges(std::move(edges), std::move(ext));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_edge_list(in, path);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (v > u) out << g.external_id(u) << ' ' << g.external_id(v) << '\n';
}

namespace {

// Labels every node with its component id; returns per-component sizes.
std::vector<std::uint32_t> label_components(const Graph& g, std::vector<std::uint32_t>& comp) {
    const NodeId n = g.node_count();
    comp.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> sizes;
    std::vector<NodeId> stack;
    for (NodeId root = 0; root < n; ++root) {
        if (comp[root] != UINT32_MAX) continue;
        const auto id = static_cast<std::uint32_t>(sizes.size());
        std::uint32_t size = 0;
        comp[root] = id;
        stack.push_back(root);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            ++size;
            for (NodeId w : g.neighbors(v)) {
                if (comp[w] == UINT32_MAX) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

}  // namespace

bool is_connected(const Graph& g) {
    std::vector<std::uint32_t> comp;
    return label_components(g, comp).size() == 1;
}

Graph largest_connected_component(const Graph& g) {
    if (g.node_count() == 0) throw EmptyGraphError("largest_connected_component: empty graph");
    std::vector<std::uint32_t> comp;
    const auto sizes = label_components(g, comp);
    // Roots are visited in ascending id order, so the first maximal component
    // is the one containing the smallest internal id.
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < sizes.size(); ++c)
        if (sizes[c] > sizes[best]) best = c;

    const NodeId n = g.node_count();
    std::vector<NodeId> remap(n, UINT32_MAX);
    std::vector<std::uint64_t> ext;
    ext.reserve(sizes[best]);
    for (NodeId v = 0; v < n; ++v) {
        if (comp[v] == best) {
            remap[v] = static_cast<NodeId>(ext.size());
            ext.push_back(g.external_id(v));
        }
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u) {
        if (comp[u] != best) continue;
        for (NodeId v : g.neighbors(u))
            if (v > u) edges.emplace_back(remap[u], remap[v]);
    }
    return Graph::from_edges(std::move(edges), std::move(ext));
}

std::uint16_t induced_subgraph_edges(const Graph& g, std::span<const NodeId> nodes) {
    const int k = static_cast<int>(nodes.size());
    std::uint16_t mask = 0;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if (g.adjacent(nodes[i], nodes[j]))
                mask |= static_cast<std::uint16_t>(1u << pair_index(i, j));
    return mask;
}

}  // namespace wrw
