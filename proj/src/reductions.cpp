#include "minreach/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace minreach::red {

namespace {

std::vector<std::pair<VertexId, VertexId>> underlying_pairs(const TemporalGraph& g) {
    std::set<std::pair<VertexId, VertexId>> pairs;
    for (const TimeEdge& e : g.edges()) pairs.emplace(e.u, e.v);
    return {pairs.begin(), pairs.end()};
}

struct UnionFind {
    std::vector<VertexId> parent;
    explicit UnionFind(VertexId n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    VertexId find(VertexId x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

}  // namespace

bool is_forest(const TemporalGraph& g) {
    UnionFind uf(g.vertex_count());
    for (const auto& [u, v] : underlying_pairs(g))
        if (!uf.unite(u, v)) return false;
    return true;
}

std::pair<DelayInstance, ReductionReceipt> delete_to_delay(const DeleteInstance& inst) {
    inst.validate();
    for (const TimeEdge& e : inst.g.edges())
        if (e.gamma != 1)
            throw std::invalid_argument("delete-to-delay requires unit traversal times");

    const VertexId n = inst.g.vertex_count();
    const Time tau = inst.g.lifetime();
    const auto pairs = underlying_pairs(inst.g);

    // Per underlying pair {a,b}: e_ab, e_ba (the subdivision), s_ab, s_ba
    // (always-reached leaves), ids in one block.
    std::map<std::pair<VertexId, VertexId>, VertexId> block;
    VertexId next = n;
    for (const auto& p : pairs) {
        block[p] = next;
        next += 4;
    }

    std::vector<TimeEdge> edges;
    ReductionReceipt receipt;
    for (const TimeEdge& e : inst.g.edges()) {
        VertexId base = block.at({e.u, e.v});
        VertexId e_uv = base, e_vu = base + 1;
        edges.push_back(make_time_edge(e.u, e_uv, 3 * e.t - 2));
        edges.push_back(make_time_edge(e.u, e_uv, 3 * e.t));
        edges.push_back(make_time_edge(e_uv, e_vu, 3 * e.t - 1));
        edges.push_back(make_time_edge(e.v, e_vu, 3 * e.t - 2));
        edges.push_back(make_time_edge(e.v, e_vu, 3 * e.t));
        receipt.edge_map[e.key()] = TimeEdgeKey{e_uv, e_vu, 3 * e.t - 1};
    }
    std::vector<VertexId> sources = inst.s.ids;
    for (const auto& p : pairs) {
        VertexId base = block.at(p);
        edges.push_back(make_time_edge(base, base + 2, 6 * tau + 1));      // s_ab - e_ab
        edges.push_back(make_time_edge(base + 1, base + 3, 6 * tau + 1));  // s_ba - e_ba
        sources.push_back(base + 2);
        sources.push_back(base + 3);
    }

    for (VertexId v = 0; v < n; ++v) receipt.vertex_map[v] = v;
    const std::int64_t added = 4 * static_cast<std::int64_t>(pairs.size());
    receipt.params["delta"] = 3 * tau;
    receipt.params["added_vertices"] = added;
    receipt.params["original_n"] = n;

    DelayInstance out;
    out.g = TemporalGraph(next, std::move(edges));
    out.s = SourceSet::of(std::move(sources), next);
    out.k = inst.k;
    out.r = inst.r + static_cast<std::uint64_t>(added);
    out.delta = 3 * tau;
    out.validate();
    return {std::move(out), std::move(receipt)};
}

std::vector<TimeEdgeKey> map_delay_witness_to_delete(const DeleteInstance& original,
                                                     const ReductionReceipt& receipt,
                                                     std::span<const TimeEdgeKey> witness) {
    const VertexId n = static_cast<VertexId>(receipt.params.at("original_n"));
    std::set<TimeEdgeKey> mapped;
    for (const TimeEdgeKey& key : witness) {
        if (key.u >= n && key.v >= n) {
            // Inside a gadget block: the middle edge {e_ab, e_ba} sits at
            // offsets (0, 1); source attachments involve offsets 2 or 3 and
            // delaying them has no effect, so they are dropped.
            VertexId du = (key.u - n) % 4;
            VertexId dv = (key.v - n) % 4;
            if (!(du == 0 && dv == 1)) continue;
            VertexId base = key.u - du;
            Time t = (key.t + 1) / 3;
            // Recover the pair from the receipt's edge map.
            for (const auto& [orig, mid] : receipt.edge_map) {
                if (mid.u == base && orig.t == t) {
                    mapped.insert(orig);
                    break;
                }
            }
        } else {
            // An original-to-gadget edge at 3t - 2 or 3t; delaying it is
            // dominated by delaying the middle edge of the same gadget.
            VertexId orig_v = std::min(key.u, key.v);
            VertexId base = std::max(key.u, key.v);
            VertexId off = (base - n) % 4;
            base -= off;
            Time t = key.t % 3 == 0 ? key.t / 3 : (key.t + 2) / 3;
            for (const auto& [orig, mid] : receipt.edge_map) {
                if (mid.u == base && orig.t == t && (orig.u == orig_v || orig.v == orig_v)) {
                    mapped.insert(orig);
                    break;
                }
            }
        }
    }
    std::vector<TimeEdgeKey> out(mapped.begin(), mapped.end());
    for (const TimeEdgeKey& key : out)
        if (!original.g.has_edge(key)) throw InternalError("witness back-mapping produced an unknown key");
    return out;
}

std::pair<SlowInstance, ReductionReceipt> to_single_source(const SlowInstance& inst) {
    inst.validate();
    const VertexId n = inst.g.vertex_count();
    const Time shift = inst.delta + 1;

    std::vector<TimeEdge> edges;
    ReductionReceipt receipt;
    for (const TimeEdge& e : inst.g.edges()) {
        edges.push_back(TimeEdge{e.u, e.v, e.t + shift, e.gamma});
        receipt.edge_map[e.key()] = TimeEdgeKey{e.u, e.v, e.t + shift};
    }
    for (VertexId sv : inst.s.ids) edges.push_back(make_time_edge(sv, n, 1));
    for (VertexId v = 0; v < n; ++v) receipt.vertex_map[v] = v;
    receipt.params["new_source"] = n;
    receipt.params["shift"] = shift;

    SlowInstance out;
    out.g = TemporalGraph(n + 1, std::move(edges));
    out.s = SourceSet::of({n}, n + 1);
    out.k = inst.k;
    out.r = inst.r + 1;
    out.delta = inst.delta;
    out.validate();
    return {std::move(out), std::move(receipt)};
}

std::vector<TimeEdgeKey> map_single_source_witness_back(const SlowInstance& original,
                                                        const ReductionReceipt& receipt,
                                                        std::span<const TimeEdgeKey> witness) {
    const VertexId new_source = static_cast<VertexId>(receipt.params.at("new_source"));
    const Time shift = receipt.params.at("shift");
    std::vector<TimeEdgeKey> out;
    for (const TimeEdgeKey& key : witness) {
        if (key.u == new_source || key.v == new_source) continue;  // slowing these has no effect
        TimeEdgeKey orig{key.u, key.v, key.t - shift};
        if (!original.g.has_edge(orig)) throw InternalError("witness back-mapping produced an unknown key");
        out.push_back(orig);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SimpleGraph SimpleGraph::of(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges) {
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("simple graph has no loops");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw std::invalid_argument("simple graph edge out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate simple graph edge");
    return SimpleGraph{n, std::move(edges)};
}

CliqueDeleteResult clique_to_delete(const SimpleGraph& h, int ell) {
    if (ell < 2) throw std::invalid_argument("clique size must be >= 2");
    const std::int64_t m = static_cast<std::int64_t>(h.edges.size());
    const std::int64_t need = static_cast<std::int64_t>(ell) * (ell - 1) / 2;

    if (ell > h.n || m < need) {
        // No ell-clique can exist; emit a canonical infeasible instance.
        DeleteInstance inst;
        inst.g = TemporalGraph(2, {make_time_edge(0, 1, 1)});
        inst.s = SourceSet::of({0}, 2);
        inst.k = 0;
        inst.r = 1;
        inst.validate();
        return {std::move(inst), true};
    }

    const VertexId n_h = h.n;
    const VertexId s = n_h;
    std::vector<TimeEdge> edges;
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        VertexId ef = n_h + 1 + static_cast<VertexId>(i);
        edges.push_back(make_time_edge(s, ef, 1));
        edges.push_back(make_time_edge(h.edges[i].first, ef, 2));
        edges.push_back(make_time_edge(h.edges[i].second, ef, 2));
    }

    DeleteInstance inst;
    inst.g = TemporalGraph(n_h + 1 + static_cast<VertexId>(m), std::move(edges));
    inst.s = SourceSet::of({s}, inst.g.vertex_count());
    inst.k = static_cast<int>(m - need);
    inst.r = 1 + static_cast<std::uint64_t>(ell) + static_cast<std::uint64_t>(need);
    inst.validate();
    return {std::move(inst), false};
}

std::pair<WeightedForestDelayInstance, ReductionReceipt> unfold_degree3(
    const WeightedForestDelayInstance& inst) {
    inst.validate();
    if (!is_forest(inst.g)) throw std::invalid_argument("unfolding requires a forest");

    const VertexId n = inst.g.vertex_count();
    const auto pairs = underlying_pairs(inst.g);
    std::vector<std::vector<VertexId>> nbr(static_cast<std::size_t>(n));
    for (const auto& [u, v] : pairs) {
        nbr[static_cast<std::size_t>(u)].push_back(v);
        nbr[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : nbr) std::sort(list.begin(), list.end());

    ReductionReceipt receipt;
    for (VertexId v = 0; v < n; ++v) receipt.vertex_map[v] = v;

    bool any_big = false;
    for (VertexId v = 0; v < n; ++v)
        if (nbr[static_cast<std::size_t>(v)].size() > 3) any_big = true;
    if (!any_big) {
        receipt.params["added_vertices"] = 0;
        for (const TimeEdge& e : inst.g.edges()) receipt.edge_map[e.key()] = e.key();
        return {inst, receipt};
    }

    // Path edges must be available for any arrival realizable after delays,
    // which can exceed the original lifetime.
    Time horizon = inst.g.lifetime();
    for (const TimeEdge& e : inst.g.edges())
        horizon = std::max(horizon, e.t + e.gamma + inst.delta);

    // Path vertex ids: the first path vertex keeps v's id (weights and
    // sources stay put); the rest are appended.
    VertexId next = n;
    std::vector<std::vector<VertexId>> path_of(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
        const std::size_t d = nbr[static_cast<std::size_t>(v)].size();
        auto& path = path_of[static_cast<std::size_t>(v)];
        path.push_back(v);
        if (d > 3)
            for (std::size_t i = 1; i + 2 < d; ++i) path.push_back(next++);
    }

    // Neighbor index -> hosting path vertex: the first path vertex takes the
    // two smallest neighbors, the last takes the two largest, the middle
    // ones take one each.
    auto host = [&](VertexId v, VertexId other) -> VertexId {
        const auto& list = nbr[static_cast<std::size_t>(v)];
        const auto& path = path_of[static_cast<std::size_t>(v)];
        if (path.size() == 1) return v;
        std::size_t i = static_cast<std::size_t>(
            std::lower_bound(list.begin(), list.end(), other) - list.begin());
        if (i <= 1) return path.front();
        if (i >= list.size() - 2) return path.back();
        return path[i - 1];
    };

    std::vector<TimeEdge> edges;
    std::vector<TimeEdgeKey> undelayable;
    for (const TimeEdge& e : inst.g.edges()) {
        VertexId a = host(e.u, e.v);
        VertexId b = host(e.v, e.u);
        TimeEdge moved = make_time_edge(a, b, e.t, e.gamma);
        edges.push_back(moved);
        receipt.edge_map[e.key()] = moved.key();
        if (inst.undelayable(e.key())) undelayable.push_back(moved.key());
    }
    for (VertexId v = 0; v < n; ++v) {
        const auto& path = path_of[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            for (Time t = 1; t <= horizon; ++t) {
                TimeEdge pe = make_time_edge(path[i], path[i + 1], t, 0);
                edges.push_back(pe);
                undelayable.push_back(pe.key());
            }
    }

    WeightedForestDelayInstance out;
    out.g = TemporalGraph(next, std::move(edges));
    out.w = WeightFn::uniform(next, 0);
    for (VertexId v = 0; v < n; ++v) out.w.at(v) = inst.w.at(v);
    std::sort(undelayable.begin(), undelayable.end());
    out.f = std::move(undelayable);
    out.s = inst.s;
    out.k = inst.k;
    out.r = inst.r;
    out.delta = inst.delta;
    out.validate();

    receipt.params["added_vertices"] = next - n;
    receipt.params["horizon"] = horizon;
    return {std::move(out), std::move(receipt)};
}

}  // namespace minreach::red
