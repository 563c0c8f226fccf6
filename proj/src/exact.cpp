#include "wrw/exact.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace wrw {

namespace {

constexpr std::uint64_t kBudgetFlushEvery = 1u << 16;

// One enumeration worker. Subgraph members and their mutual adjacency bits
// are carried down the recursion so the leaf does a single table lookup.
class EsuWorker {
public:
    EsuWorker(const Graph& g, int k, const MotifCatalog& catalog, std::uint64_t budget,
              std::atomic<std::uint64_t>& global_seen, std::atomic<bool>& abort)
        : g_(g),
          k_(k),
          table_(catalog.entries(k)),
          budget_(budget),
          global_seen_(global_seen),
          abort_(abort),
          counts_(table_.size(), 0),
          mark_(g.node_count(), 0) {
        classify_.resize(1u << (k * (k - 1) / 2));
        for (std::uint32_t mask = 0; mask < classify_.size(); ++mask)
            classify_[mask] = static_cast<std::int8_t>(catalog.classify(static_cast<std::uint16_t>(mask), k));
    }

    void run_root(NodeId root) {
        root_ = root;
        epoch_ = root + 1;
        mark_[root] = epoch_;
        sub_[0] = root;
        depth_ = 1;
        std::vector<NodeId> ext;
        for (NodeId u : g_.neighbors(root)) {
            if (u > root) {
                ext.push_back(u);
                mark_[u] = epoch_;
            }
        }
        extend(ext, 0);
    }

    void merge_into(std::vector<std::uint64_t>& out, std::uint64_t& out_total) {
        flush();
        for (std::size_t i = 0; i < counts_.size(); ++i) out[i] += counts_[i];
        out_total += total_;
    }

    bool aborted() const { return abort_.load(std::memory_order_relaxed); }

private:
    void emit(std::uint16_t mask) {
        ++counts_[static_cast<std::size_t>(classify_[mask]) - 1];
        if (++local_since_flush_ >= kBudgetFlushEvery) flush();
    }

    void flush() {
        total_ += local_since_flush_;
        const auto seen = global_seen_.fetch_add(local_since_flush_, std::memory_order_relaxed) +
                          local_since_flush_;
        local_since_flush_ = 0;
        if (seen > budget_) abort_.store(true, std::memory_order_relaxed);
    }

    void extend(std::vector<NodeId>& ext, std::uint16_t mask) {
        if (aborted()) return;
        while (!ext.empty()) {
            const NodeId w = ext.back();
            ext.pop_back();
            std::uint16_t mask2 = mask;
            for (int i = 0; i < depth_; ++i)
                if (g_.adjacent(sub_[i], w))
                    mask2 |= static_cast<std::uint16_t>(1u << pair_index(i, depth_));
            sub_[depth_] = w;
            ++depth_;
            if (depth_ == k_) {
                emit(mask2);
            } else {
                // Exclusive neighbors of w extend the candidate set; everything
                // already in the closed neighborhood of the subgraph is marked.
                std::vector<NodeId> ext2 = ext;
                std::size_t newly_marked_from = marked_.size();
                for (NodeId u : g_.neighbors(w)) {
                    if (u > root_ && mark_[u] != epoch_) {
                        mark_[u] = epoch_;
                        marked_.push_back(u);
                        ext2.push_back(u);
                    }
                }
                extend(ext2, mask2);
                while (marked_.size() > newly_marked_from) {
                    mark_[marked_.back()] = 0;
                    marked_.pop_back();
                }
            }
            --depth_;
            if (aborted()) return;
        }
    }

    const Graph& g_;
    const int k_;
    std::span<const MotifEntry> table_;
    const std::uint64_t budget_;
    std::atomic<std::uint64_t>& global_seen_;
    std::atomic<bool>& abort_;

    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::uint64_t local_since_flush_ = 0;

    std::vector<std::int8_t> classify_;
    std::vector<std::uint32_t> mark_;
    std::vector<NodeId> marked_;
    std::array<NodeId, 8> sub_{};
    int depth_ = 0;
    NodeId root_ = 0;
    std::uint32_t epoch_ = 0;
};

}  // namespace

ExactCounts enumerate_exact(const Graph& g, int k, const MotifCatalog& catalog,
                            const ExactOptions& options) {
    if (k < 3 || k > catalog.k_max()) throw std::invalid_argument("enumerate_exact: bad k");
    const auto start_time = std::chrono::steady_clock::now();

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min(threads, g.node_count()));

    std::atomic<std::uint64_t> global_seen{0};
    std::atomic<bool> abort{false};
    std::atomic<NodeId> next_root{0};

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(catalog.motif_count(k)), 0);
    std::uint64_t total = 0;
    std::mutex merge_mutex;

    auto work = [&] {
        EsuWorker worker(g, k, catalog, options.cis_budget, global_seen, abort);
        for (;;) {
            const NodeId root = next_root.fetch_add(1, std::memory_order_relaxed);
            if (root >= g.node_count() || worker.aborted()) break;
            worker.run_root(root);
        }
        std::lock_guard lock(merge_mutex);
        worker.merge_into(counts, total);
    };

    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    if (abort.load()) throw CisBudgetExceeded(global_seen.load(), options.cis_budget);

    ExactCounts out;
    out.k = k;
    out.counts = std::move(counts);
    out.total = total;
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return out;
}

ExactCounts brute_force_subsets(const Graph& g, int k, const MotifCatalog& catalog) {
    if (g.node_count() > 14) throw std::invalid_argument("brute_force_subsets: graph too large");
    if (k < 3 || k > catalog.k_max()) throw std::invalid_argument("brute_force_subsets: bad k");
    const auto start_time = std::chrono::steady_clock::now();

    ExactCounts out;
    out.k = k;
    out.counts.assign(static_cast<std::size_t>(catalog.motif_count(k)), 0);

    const int n = static_cast<int>(g.node_count());
    std::vector<NodeId> pick(static_cast<std::size_t>(k));
    auto choose = [&](auto&& self, int from, int depth) -> void {
        if (depth == k) {
            const auto mask = induced_subgraph_edges(g, pick);
            if (const int m = catalog.classify(mask, k); m != 0) {
                ++out.counts[static_cast<std::size_t>(m) - 1];
                ++out.total;
            }
            return;
        }
        for (int v = from; v < n; ++v) {
            pick[static_cast<std::size_t>(depth)] = static_cast<NodeId>(v);
            self(self, v + 1, depth + 1);
        }
    };
    choose(choose, 0, 0);
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return out;
}

}  // namespace wrw
