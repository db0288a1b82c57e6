#include "minreach/temporal_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace minreach {

namespace {

bool edge_order(const TimeEdge& a, const TimeEdge& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

}  // namespace

TimeEdge make_time_edge(VertexId u, VertexId v, Time t, Time gamma) {
    if (u == v) throw std::invalid_argument("time-edge endpoints must differ");
    if (u > v) std::swap(u, v);
    if (u < 0) throw std::invalid_argument("negative vertex id");
    if (t < 1) throw std::invalid_argument("time labels start at 1");
    if (gamma < 0) throw std::invalid_argument("traversal time must be >= 0");
    return TimeEdge{u, v, t, gamma};
}

TemporalGraph::TemporalGraph(VertexId n, std::vector<TimeEdge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
    for (const TimeEdge& e : edges_) {
        if (e.u < 0 || e.v >= n_ || e.u >= e.v)
            throw std::invalid_argument("time-edge endpoints out of range or not canonical");
        if (e.t < 1) throw std::invalid_argument("time labels start at 1");
        if (e.gamma < 0) throw std::invalid_argument("traversal time must be >= 0");
    }
    std::sort(edges_.begin(), edges_.end(), edge_order);
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].key() == edges_[i - 1].key())
            throw std::invalid_argument("duplicate time-edge key");
    }
    tau_ = 1;
    for (const TimeEdge& e : edges_) tau_ = std::max(tau_, e.t);
}

std::optional<std::size_t> TemporalGraph::index_of(const TimeEdgeKey& key) const {
    TimeEdge probe{key.u, key.v, key.t, 0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_order);
    if (it != edges_.end() && it->key() == key)
        return static_cast<std::size_t>(it - edges_.begin());
    return std::nullopt;
}

SourceSet SourceSet::of(std::vector<VertexId> ids, VertexId n) {
    if (ids.empty()) throw std::invalid_argument("source set must be nonempty");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (VertexId v : ids)
        if (v < 0 || v >= n) throw std::invalid_argument("source vertex out of range");
    return SourceSet{std::move(ids)};
}

bool SourceSet::contains(VertexId v) const {
    return std::binary_search(ids.begin(), ids.end(), v);
}

WeightFn WeightFn::uniform(VertexId n, Weight w) {
    return WeightFn{std::vector<Weight>(static_cast<std::size_t>(n), w)};
}

Weight weight_of(const WeightFn& w, std::span<const VertexId> vs) {
    Weight total = 0;
    for (VertexId v : vs) total = weight_add(total, w.at(v));
    return total;
}

namespace {

std::vector<std::size_t> resolve_keys(const TemporalGraph& g, std::span<const TimeEdgeKey> x) {
    std::vector<std::size_t> idx;
    idx.reserve(x.size());
    std::set<TimeEdgeKey> seen;
    for (const TimeEdgeKey& key : x) {
        auto i = g.index_of(key);
        if (!i) throw std::invalid_argument("unknown time-edge key");
        if (seen.insert(key).second) idx.push_back(*i);
    }
    return idx;
}

}  // namespace

TemporalGraph apply_delete(const TemporalGraph& g, std::span<const TimeEdgeKey> x) {
    std::vector<std::size_t> idx = resolve_keys(g, x);
    std::vector<bool> drop(g.edge_count(), false);
    for (std::size_t i : idx) drop[i] = true;
    std::vector<TimeEdge> kept;
    kept.reserve(g.edge_count() - idx.size());
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (!drop[i]) kept.push_back(g.edge_at(i));
    return TemporalGraph(g.vertex_count(), std::move(kept));
}

TemporalGraph apply_delay(const TemporalGraph& g, std::span<const TimeEdgeKey> x, Time delta) {
    if (delta < 1) throw std::invalid_argument("delay delta must be >= 1");
    std::vector<std::size_t> idx = resolve_keys(g, x);
    std::vector<bool> moved(g.edge_count(), false);
    for (std::size_t i : idx) moved[i] = true;

    std::map<TimeEdgeKey, Time> gamma_by_key;  // merged result
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        if (moved[i]) continue;
        const TimeEdge& e = g.edge_at(i);
        gamma_by_key.emplace(e.key(), e.gamma);
    }
    for (std::size_t i : idx) {
        const TimeEdge& e = g.edge_at(i);
        TimeEdgeKey shifted{e.u, e.v, e.t + delta};
        auto [it, inserted] = gamma_by_key.emplace(shifted, e.gamma);
        if (!inserted) it->second = std::min(it->second, e.gamma);
    }

    std::vector<TimeEdge> edges;
    edges.reserve(gamma_by_key.size());
    for (const auto& [key, gamma] : gamma_by_key)
        edges.push_back(TimeEdge{key.u, key.v, key.t, gamma});
    return TemporalGraph(g.vertex_count(), std::move(edges));
}

TemporalGraph apply_slow(const TemporalGraph& g, std::span<const TimeEdgeKey> x, Time delta) {
    if (delta < 1) throw std::invalid_argument("slow delta must be >= 1");
    std::vector<std::size_t> idx = resolve_keys(g, x);
    std::vector<TimeEdge> edges(g.edges());
    for (std::size_t i : idx) edges[i].gamma += delta;
    return TemporalGraph(g.vertex_count(), std::move(edges));
}

std::vector<VertexId> temporal_neighborhood(const TemporalGraph& g, VertexId v, Time t) {
    if (t < 1) throw std::invalid_argument("temporal neighborhood needs t >= 1");
    std::vector<VertexId> out;
    for (const TimeEdge& e : g.edges()) {
        if (e.t < t) continue;
        if (e.u == v) out.push_back(e.v);
        if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AdjacencyIndex AdjacencyIndex::build(const TemporalGraph& g) {
    AdjacencyIndex idx;
    idx.incident.resize(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const TimeEdge& e = g.edge_at(i);
        idx.incident[static_cast<std::size_t>(e.u)].push_back(i);
        idx.incident[static_cast<std::size_t>(e.v)].push_back(i);
    }
    return idx;
}

}  // namespace minreach
