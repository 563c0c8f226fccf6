#include "wrw/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace wrw {

double EstimateAccumulator::c_total() const {
    double sum = 0;
    for (double x : c) sum += x;
    return sum;
}

void EstimateAccumulator::merge(const EstimateAccumulator& other) {
    if (k != other.k || c.size() != other.c.size())
        throw std::invalid_argument("merge: accumulators are for different catalogs");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.c[i];
    t += other.t;
    runs_merged += other.runs_merged;
    inv_degree_sum += other.inv_degree_sum;
    queries_distinct += other.queries_distinct;
    queries_total += other.queries_total;
}

namespace {

bool all_distinct(std::span<const NodeId> nodes) {
    for (std::size_t j = 1; j < nodes.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (nodes[i] == nodes[j]) return false;
    return true;
}

// Induced edge mask routed through the provider so adjacency resolution is
// priced under the query model.
std::uint16_t induced_mask(NeighborProvider& p, std::span<const NodeId> nodes) {
    std::uint16_t mask = 0;
    const int k = static_cast<int>(nodes.size());
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if (p.adjacent(nodes[i], nodes[j]))
                mask |= static_cast<std::uint16_t>(1u << pair_index(i, j));
    return mask;
}

// Stops a budgeted run once Q distinct fetches are on the ledger. When the
// whole graph fits inside Q the distinct count saturates below it, so the
// rule degrades to a budget of Q post-burn-in steps.
struct StopRule {
    std::optional<std::uint64_t> query_budget;
    std::optional<std::uint64_t> step_budget;
    std::uint32_t node_count;

    bool done(const QueryLedger& ledger, std::uint64_t t) const {
        if (step_budget) return t >= *step_budget;
        if (ledger.distinct >= *query_budget) return true;
        return ledger.distinct >= node_count && t >= *query_budget;
    }
};

void validate_config(const WalkConfig& config) {
    if (config.query_budget.has_value() == config.step_budget.has_value())
        throw std::invalid_argument("walk config needs exactly one of query_budget/step_budget");
}

template <class StepUpdate>
EstimateAccumulator run_walk_loop(const Graph& g, int motif_slots, const WalkConfig& config,
                                  StepUpdate&& update) {
    validate_config(config);
    if (g.node_count() < 2 || !is_connected(g))
        throw std::invalid_argument("walk estimators require a connected graph with >= 2 nodes");

    LocalProvider provider(g);
    WalkState state(config.seed, config.run_index);
    state.start(provider, config.start);
    state.burn_in(provider, config.burn_in);

    EstimateAccumulator acc;
    acc.c.assign(static_cast<std::size_t>(motif_slots), 0.0);
    const StopRule stop{config.query_budget, config.step_budget, g.node_count()};

    for (;;) {
        const NodeId departed = state.current();
        state.step(provider);
        ++acc.t;
        acc.inv_degree_sum += 1.0 / static_cast<double>(provider.degree_of_fetched(departed));
        update(provider, state, acc);
        if (stop.done(provider.ledger(), acc.t)) break;
    }
    acc.queries_distinct = provider.ledger().distinct;
    acc.queries_total = provider.ledger().total;
    return acc;
}

double anchor_factor(const NeighborProvider& p, NodeId anchor, int draws) {
    double f = 1.0;
    const auto d = static_cast<double>(p.degree_of_fetched(anchor));
    for (int i = 0; i < draws; ++i) f *= d;
    return f;
}

}  // namespace

EstimateAccumulator estimate_no_waddle(const Graph& g, int k, const MotifCatalog& catalog,
                                       const WalkConfig& config) {
    if (k < 3 || k > catalog.k_max()) throw std::invalid_argument("estimate_no_waddle: bad k");
    const auto entries = catalog.entries(k);

    // Distinct covering-walk window lengths across the motifs of this size.
    std::vector<int> window_sizes;
    for (const auto& e : entries) window_sizes.push_back(e.l);
    std::sort(window_sizes.begin(), window_sizes.end());
    window_sizes.erase(std::unique(window_sizes.begin(), window_sizes.end()), window_sizes.end());

    auto acc = run_walk_loop(
        g, catalog.motif_count(k), config,
        [&](NeighborProvider& p, const WalkState& st, EstimateAccumulator& a) {
            std::array<NodeId, WalkState::kMaxWindow> buf;
            std::array<NodeId, 8> uniq;
            for (int s : window_sizes) {
                if (!st.window(s, {buf.data(), static_cast<std::size_t>(s)})) continue;
                int distinct = 0;
                for (int i = 0; i < s; ++i) {
                    bool seen = false;
                    for (int j = 0; j < distinct; ++j) seen |= uniq[j] == buf[i];
                    if (!seen) {
                        if (distinct == k) {
                            distinct = k + 1;
                            break;
                        }
                        uniq[distinct++] = buf[i];
                    }
                }
                if (distinct != k) continue;
                const auto mask = induced_mask(p, {uniq.data(), static_cast<std::size_t>(k)});
                const int m = catalog.classify(mask, k);
                const auto& e = entries[m - 1];
                if (e.l != s) continue;  // this motif is sampled in its own window only
                a.c[m - 1] += path_weight(p, {buf.data(), static_cast<std::size_t>(s)}) /
                              static_cast<double>(e.pr_at(s));
            }
        });
    acc.k = k;
    return acc;
}

EstimateAccumulator estimate_wrw_generic(const Graph& g, int k, const MotifCatalog& catalog,
                                         const WalkConfig& config) {
    if (k < 3 || k > catalog.k_max()) throw std::invalid_argument("estimate_wrw_generic: bad k");
    const auto entries = catalog.entries(k);
    const auto groups = catalog.waddle_groups(k);

    auto acc = run_walk_loop(
        g, catalog.motif_count(k), config,
        [&](NeighborProvider& p, WalkState& st, EstimateAccumulator& a) {
            std::array<NodeId, 8> buf;

            // Full window: a distinct k-window traces a Hamiltonian path of
            // whatever motif it induces, so classification never lands on a
            // motif with L < k here.
            if (st.window(k, {buf.data(), static_cast<std::size_t>(k)}) &&
                all_distinct({buf.data(), static_cast<std::size_t>(k)})) {
                const auto mask = induced_mask(p, {buf.data(), static_cast<std::size_t>(k)});
                const int m = catalog.classify(mask, k);
                a.c[m - 1] += path_weight(p, {buf.data(), static_cast<std::size_t>(k)}) /
                              static_cast<double>(entries[m - 1].pr_at(k));
            }

            for (const auto& group : groups) {
                const int s = group.s;
                if (!st.window(s, {buf.data(), static_cast<std::size_t>(s)})) continue;
                if (!all_distinct({buf.data(), static_cast<std::size_t>(s)})) continue;
                const auto draw = waddle_sample(p, buf[1], k - s, st.waddle_rng());
                for (int i = 0; i < draw.count; ++i) buf[s + i] = draw.nodes[i];
                if (!all_distinct({buf.data(), static_cast<std::size_t>(k)})) continue;
                const auto mask = induced_mask(p, {buf.data(), static_cast<std::size_t>(k)});
                const int m = catalog.classify(mask, k);
                if (m == 0) continue;
                const auto& e = entries[m - 1];
                if (e.L != s) continue;  // recognized only by its own window size
                a.c[m - 1] += path_weight(p, {buf.data(), static_cast<std::size_t>(s)}) *
                              anchor_factor(p, buf[1], k - s) /
                              static_cast<double>(e.waddle_divisor());
            }
        });
    acc.k = k;
    return acc;
}

EstimateAccumulator estimate_wrw_4(const Graph& g, const MotifCatalog& catalog,
                                   const WalkConfig& config) {
    const auto entries = catalog.entries(4);
    const auto groups = catalog.waddle_groups(4);
    const int star = groups[0].motifs[0];  // the one motif with L = 3
    const double star_divisor = static_cast<double>(entries[star - 1].waddle_divisor());

    auto acc = run_walk_loop(
        g, catalog.motif_count(4), config,
        [&](NeighborProvider& p, WalkState& st, EstimateAccumulator& a) {
            std::array<NodeId, 5> buf;
            // distinct R^(4): classify directly, add d(r_{i-1}) d(r_{i-2}) / P_r(4,m,4)
            if (st.window(4, {buf.data(), 4}) && all_distinct({buf.data(), 4})) {
                const int m = catalog.classify(induced_mask(p, {buf.data(), 4}), 4);
                a.c[m - 1] += path_weight(p, {buf.data(), 4}) /
                              static_cast<double>(entries[m - 1].pr_at(4));
            }
            // distinct R^(3) plus one neighbor of r_{i-1}: star test, d(r_{i-1})^2 / 6
            if (st.window(3, {buf.data(), 3}) && all_distinct({buf.data(), 3})) {
                const auto draw = waddle_sample(p, buf[1], 1, st.waddle_rng());
                buf[3] = draw.nodes[0];
                if (all_distinct({buf.data(), 4})) {
                    const int m = catalog.classify(induced_mask(p, {buf.data(), 4}), 4);
                    if (m == star)
                        a.c[m - 1] += path_weight(p, {buf.data(), 3}) *
                                      anchor_factor(p, buf[1], 1) / star_divisor;
                }
            }
        });
    acc.k = 4;
    return acc;
}

EstimateAccumulator estimate_wrw_5(const Graph& g, const MotifCatalog& catalog,
                                   const WalkConfig& config) {
    const auto entries = catalog.entries(5);
    const auto groups = catalog.waddle_groups(5);
    // groups are in descending s order: s=4 holds the two path-completable
    // motifs, s=3 the star.
    const int fork = groups[0].motifs[0];
    const int cricket = groups[0].motifs[1];
    const int star = groups[1].motifs[0];
    const double fork_divisor = static_cast<double>(entries[fork - 1].waddle_divisor());
    const double cricket_divisor = static_cast<double>(entries[cricket - 1].waddle_divisor());
    const double star_divisor = static_cast<double>(entries[star - 1].waddle_divisor());

    auto acc = run_walk_loop(
        g, catalog.motif_count(5), config,
        [&](NeighborProvider& p, WalkState& st, EstimateAccumulator& a) {
            std::array<NodeId, 6> buf;
            // distinct R^(5): d(r_{i-1}) d(r_{i-2}) d(r_{i-3}) / P_r(5,m,5)
            if (st.window(5, {buf.data(), 5}) && all_distinct({buf.data(), 5})) {
                const int m = catalog.classify(induced_mask(p, {buf.data(), 5}), 5);
                a.c[m - 1] += path_weight(p, {buf.data(), 5}) /
                              static_cast<double>(entries[m - 1].pr_at(5));
            }
            // distinct R^(4) plus one neighbor of r_{i-2}: d(r_{i-1}) d(r_{i-2})^2 / {2,4}
            if (st.window(4, {buf.data(), 4}) && all_distinct({buf.data(), 4})) {
                const auto draw = waddle_sample(p, buf[1], 1, st.waddle_rng());
                buf[4] = draw.nodes[0];
                if (all_distinct({buf.data(), 5})) {
                    const int m = catalog.classify(induced_mask(p, {buf.data(), 5}), 5);
                    if (m == fork) {
                        a.c[m - 1] += path_weight(p, {buf.data(), 4}) *
                                      anchor_factor(p, buf[1], 1) / fork_divisor;
                    } else if (m == cricket) {
                        a.c[m - 1] += path_weight(p, {buf.data(), 4}) *
                                      anchor_factor(p, buf[1], 1) / cricket_divisor;
                    }
                }
            }
            // distinct R^(3) plus two neighbors of r_{i-1}: star test, d(r_{i-1})^3 / 24
            if (st.window(3, {buf.data(), 3}) && all_distinct({buf.data(), 3})) {
                const auto draw = waddle_sample(p, buf[1], 2, st.waddle_rng());
                buf[3] = draw.nodes[0];
                buf[4] = draw.nodes[1];
                if (all_distinct({buf.data(), 5})) {
                    const int m = catalog.classify(induced_mask(p, {buf.data(), 5}), 5);
                    if (m == star)
                        a.c[m - 1] += path_weight(p, {buf.data(), 3}) *
                                      anchor_factor(p, buf[1], 2) / star_divisor;
                }
            }
        });
    acc.k = 5;
    return acc;
}

std::vector<double> finalize_concentrations(const EstimateAccumulator& acc) {
    const double total = acc.c_total();
    if (total <= 0) throw NoSamplesError("no motif samples were collected (c_t = 0)");
    std::vector<double> out(acc.c.size());
    for (std::size_t i = 0; i < acc.c.size(); ++i) out[i] = acc.c[i] / total;
    return out;
}

double estimate_degree_sum(const Graph& g, double sample_fraction, const WalkConfig& config) {
    if (sample_fraction <= 0) throw std::invalid_argument("sample_fraction must be positive");
    WalkConfig cfg = config;
    cfg.query_budget.reset();
    cfg.step_budget = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(sample_fraction * g.node_count())));
    const auto acc = run_walk_loop(g, 0, cfg, [](auto&, auto&, auto&) {});
    return degree_sum_estimate(acc, g.node_count());
}

double degree_sum_estimate(const EstimateAccumulator& acc, std::uint64_t node_count) {
    if (acc.t == 0 || acc.inv_degree_sum <= 0)
        throw NoSamplesError("degree-sum estimate needs at least one walk step");
    return static_cast<double>(node_count) * static_cast<double>(acc.t) / acc.inv_degree_sum;
}

std::optional<double> estimate_motif_count(const EstimateAccumulator& acc,
                                           double degree_sum_est, MotifId id) {
    if (id.k != acc.k || id.m < 1 || id.m > static_cast<int>(acc.c.size()))
        throw std::invalid_argument("estimate_motif_count: motif id does not match accumulator");
    const double c_m = acc.c[static_cast<std::size_t>(id.m) - 1];
    if (c_m <= 0) return std::nullopt;
    return c_m / static_cast<double>(acc.t) * degree_sum_est;
}

BoundResult required_steps(const BoundInputs& b) {
    if (!(b.delta > 0 && b.delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
    if (!(b.alpha > 0 && b.alpha < 1)) throw std::invalid_argument("alpha must be in (0,1)");
    if (!(b.mixing_time > 0 && b.degree_sum > 0 && b.top_degree_product > 0 &&
          b.motif_count > 0 && b.xi > 0 && b.c_const > 0))
        throw std::invalid_argument("bound inputs must be positive");

    BoundResult r;
    r.t_min = b.xi * b.mixing_time * b.degree_sum * b.top_degree_product *
              std::log(b.c_const / b.alpha) / (b.motif_count * b.delta * b.delta);
    r.lower_factor = 1.0 - 2.0 * b.delta / (1.0 + b.delta);
    r.upper_factor = 1.0 + 2.0 * b.delta / (1.0 - b.delta);
    r.confidence = 1.0 - 2.0 * b.alpha;
    return r;
}

}  // namespace wrw
