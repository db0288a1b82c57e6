#include "minreach/fpt.hpp"

#include <algorithm>
#include <set>

#include "minreach/flow.hpp"
#include "minreach/reductions.hpp"

namespace minreach::fpt {

namespace {

struct Search {
    Search(const TemporalGraph& graph, VertexId source, int budget, std::uint64_t bound, Time d)
        : g(graph), idx(AdjacencyIndex::build(graph)), s(source), k(budget), r(bound), delta(d) {}

    const TemporalGraph& g;
    AdjacencyIndex idx;
    VertexId s;
    int k;
    std::uint64_t r;
    Time delta;

    std::int64_t nodes_visited = 0;
    std::int64_t leaves = 0;
    std::int64_t max_depth = 0;
    std::int64_t flow_calls = 0;
    std::int64_t duplicate_r_sets = 0;
    std::int64_t branching_violations = 0;
    std::set<std::vector<VertexId>> seen;  // duplicate accounting only; no memoization

    std::optional<std::vector<TimeEdgeKey>> visit(std::vector<VertexId>& r_set) {
        ++nodes_visited;
        max_depth = std::max<std::int64_t>(max_depth, static_cast<std::int64_t>(r_set.size()));
        if (!seen.insert(r_set).second) ++duplicate_r_sets;

        flow::FlowNetwork net = flow::build_flow_network(g, idx, s, r_set, delta);
        ++flow_calls;
        flow::FlowAssignment f = flow::bounded_max_flow(net, static_cast<std::uint64_t>(k));
        if (!f.exceeds_bound) {
            ++leaves;
            return flow::min_cut_timeedges(net, f);
        }
        if (r_set.size() >= r) {
            ++leaves;
            return std::nullopt;
        }
        auto h = flow::escape_pairs(net, f);
        auto y = flow::branching_set(g, idx, r_set, h);
        if (y.size() > r_set.size()) ++branching_violations;
        for (VertexId v : y) {
            std::vector<VertexId> grown = r_set;
            grown.insert(std::upper_bound(grown.begin(), grown.end(), v), v);
            if (auto witness = visit(grown)) return witness;
        }
        return std::nullopt;
    }
};

void fill_search_stats(SolveResult& res, const Search& search) {
    res.stats["nodes_visited"] = search.nodes_visited;
    res.stats["leaves"] = search.leaves;
    res.stats["max_depth"] = search.max_depth;
    res.stats["flow_calls"] = search.flow_calls;
    res.stats["duplicate_r_sets"] = search.duplicate_r_sets;
    res.stats["branching_violations"] = search.branching_violations;
    res.stats["search_r"] = static_cast<std::int64_t>(search.r);
}

}  // namespace

SolveResult solve_slow_single_source(const TemporalGraph& g, VertexId s, int k, std::uint64_t r,
                                     Time delta) {
    if (s < 0 || s >= g.vertex_count()) throw std::invalid_argument("source out of range");
    if (k < 0) throw std::invalid_argument("budget k must be >= 0");
    if (r < 1) throw std::invalid_argument("bound r must be >= 1");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");

    Search search(g, s, k, r, delta);
    std::vector<VertexId> r_set{s};
    auto witness = search.visit(r_set);

    SolveResult res;
    fill_search_stats(res, search);
    if (!witness) {
        res.feasible = false;
        return res;
    }
    std::sort(witness->begin(), witness->end());
    SlowInstance check{g, SourceSet::of({s}, g.vertex_count()), k, r, delta};
    if (!verify_slow(check, *witness))
        throw InternalError("search accepted with a witness that fails verification");
    res.feasible = true;
    res.objective = static_cast<Weight>(reachable_set(apply_slow(g, *witness, delta), check.s).size());
    res.witness = std::move(*witness);
    return res;
}

SolveResult solve_slow(const SlowInstance& inst) {
    inst.validate();
    auto [reduced, receipt] = red::to_single_source(inst);
    SolveResult inner =
        solve_slow_single_source(reduced.g, reduced.s.ids.front(), reduced.k, reduced.r, reduced.delta);

    SolveResult res;
    res.stats = inner.stats;
    res.feasible = inner.feasible;
    if (!inner.feasible) return res;

    auto witness = red::map_single_source_witness_back(inst, receipt, *inner.witness);
    if (!verify_slow(inst, witness))
        throw InternalError("single-source witness does not verify on the original instance");
    res.objective = static_cast<Weight>(reachable_set(apply_slow(inst.g, witness, inst.delta), inst.s).size());
    res.witness = std::move(witness);
    return res;
}

SolveResult solve_delay(const DelayInstance& inst) {
    inst.validate();
    SolveResult slow = solve_slow(slow_from_delay(inst));
    if (!slow.feasible) return slow;

    auto minimal = minimalize_witness(inst.g, inst.s, *slow.witness, inst.delta, inst.r);
    if (!verify_delay(inst, minimal))
        throw InternalError("inclusion-minimal slow witness fails under delay semantics");

    SolveResult res;
    res.stats = slow.stats;
    res.stats["minimalization_removed"] =
        static_cast<std::int64_t>(slow.witness->size() - minimal.size());
    res.feasible = true;
    res.objective =
        static_cast<Weight>(reachable_set(apply_delay(inst.g, minimal, inst.delta), inst.s).size());
    res.witness = std::move(minimal);
    return res;
}

std::vector<TimeEdgeKey> minimalize_witness(const TemporalGraph& g, const SourceSet& s,
                                            std::span<const TimeEdgeKey> x, Time delta,
                                            std::uint64_t r) {
    std::vector<TimeEdgeKey> current(x.begin(), x.end());
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    for (const TimeEdgeKey& key : current)
        if (!g.has_edge(key)) throw std::invalid_argument("witness references unknown time-edge");
    if (reachable_set(apply_slow(g, current, delta), s).size() > r)
        throw std::invalid_argument("witness to minimalize is not a valid slow witness");

    // Dropping an element can only grow the reach, so a single sorted pass
    // yields an inclusion-minimal witness.
    std::size_t i = 0;
    while (i < current.size()) {
        std::vector<TimeEdgeKey> without = current;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
        if (reachable_set(apply_slow(g, without, delta), s).size() <= r)
            current = std::move(without);
        else
            ++i;
    }
    return current;
}

SolveResult approx_min_reach(const TemporalGraph& g, const SourceSet& s, int k, Time delta) {
    if (k < 0) throw std::invalid_argument("budget k must be >= 0");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");

    // The single-source graph does not depend on the bound; build it once.
    SlowInstance shell{g, s, k, static_cast<std::uint64_t>(s.size()), delta};
    auto [reduced, receipt] = red::to_single_source(shell);
    const VertexId rs = reduced.s.ids.front();
    AdjacencyIndex idx = AdjacencyIndex::build(reduced.g);

    const std::uint64_t plain_reach = reachable_set(g, s).size();
    std::int64_t flow_calls = 0;
    std::int64_t descents = 0;

    for (std::uint64_t bound = s.size(); bound <= plain_reach; ++bound) {
        ++descents;
        std::vector<VertexId> r_set{rs};
        std::optional<std::vector<TimeEdgeKey>> cut;
        while (true) {
            flow::FlowNetwork net = flow::build_flow_network(reduced.g, idx, rs, r_set, delta);
            ++flow_calls;
            flow::FlowAssignment f = flow::bounded_max_flow(net, static_cast<std::uint64_t>(k));
            if (!f.exceeds_bound) {
                cut = flow::min_cut_timeedges(net, f);
                break;
            }
            if (r_set.size() >= bound + 1) break;
            auto h = flow::escape_pairs(net, f);
            auto y = flow::branching_set(reduced.g, idx, r_set, h);
            std::vector<VertexId> grown;
            grown.reserve(r_set.size() + y.size());
            std::merge(r_set.begin(), r_set.end(), y.begin(), y.end(), std::back_inserter(grown));
            r_set = std::move(grown);
        }
        if (!cut) continue;

        auto mapped = red::map_single_source_witness_back(shell, receipt, *cut);
        const std::uint64_t slow_reach = reachable_set(apply_slow(g, mapped, delta), s).size();
        auto minimal = minimalize_witness(g, s, mapped, delta, slow_reach);
        const std::uint64_t delay_reach =
            reachable_set(apply_delay(g, minimal, delta), s).size();
        if (delay_reach > slow_reach)
            throw InternalError("minimal slow witness reaches more under delay semantics");

        SolveResult res;
        res.feasible = true;
        res.objective = static_cast<Weight>(delay_reach);
        res.witness = std::move(minimal);
        res.stats["accepted_bound"] = static_cast<std::int64_t>(bound);
        res.stats["descents"] = descents;
        res.stats["flow_calls"] = flow_calls;
        res.stats["confinement_size"] = static_cast<std::int64_t>(slow_reach);
        return res;
    }
    throw InternalError("greedy descent failed to accept at the trivial bound");
}

}  // namespace minreach::fpt
