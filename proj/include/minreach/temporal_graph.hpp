#pragma once

#include <optional>
#include <span>
#include <vector>

#include "minreach/types.hpp"

namespace minreach {

/// A temporal graph: n vertices, a lifetime tau, and a duplicate-free set of
/// time-edges kept sorted by (t, u, v). Layers are implicit in the time
/// labels. Instances are immutable; the modification operators return new
/// graphs.
class TemporalGraph {
public:
    TemporalGraph() = default;
    /// Validates endpoints, t >= 1, gamma >= 0, and key uniqueness.
    /// tau is max(t) over edges, or 1 for the edgeless graph.
    TemporalGraph(VertexId n, std::vector<TimeEdge> edges);

    VertexId vertex_count() const { return n_; }
    Time lifetime() const { return tau_; }
    const std::vector<TimeEdge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(const TimeEdgeKey& key) const { return index_of(key).has_value(); }
    std::optional<std::size_t> index_of(const TimeEdgeKey& key) const;
    const TimeEdge& edge_at(std::size_t i) const { return edges_[i]; }

    friend bool operator==(const TemporalGraph&, const TemporalGraph&) = default;

private:
    VertexId n_ = 0;
    Time tau_ = 1;
    std::vector<TimeEdge> edges_;  // sorted by (t, u, v)
};

/// Nonempty set of source vertices, kept sorted. Duplicates are collapsed.
struct SourceSet {
    std::vector<VertexId> ids;

    static SourceSet of(std::vector<VertexId> ids, VertexId n);
    std::size_t size() const { return ids.size(); }
    bool contains(VertexId v) const;
};

/// Vertex weights in {0, 1, ...} u {INFINITE}.
struct WeightFn {
    std::vector<Weight> values;

    static WeightFn uniform(VertexId n, Weight w = 1);
    Weight at(VertexId v) const { return values[static_cast<std::size_t>(v)]; }
    Weight& at(VertexId v) { return values[static_cast<std::size_t>(v)]; }
    VertexId size() const { return static_cast<VertexId>(values.size()); }
};

/// Saturating sum of the weights of a vertex set.
Weight weight_of(const WeightFn& w, std::span<const VertexId> vs);

/// Removes the given time-edges. Unknown keys are rejected.
TemporalGraph apply_delete(const TemporalGraph& g, std::span<const TimeEdgeKey> x);

/// Moves each time-edge in x from t to t + delta. If a delayed edge lands on
/// an existing key, the pair merges keeping the smaller traversal time.
/// Lifetime grows as needed. Unknown keys are rejected.
TemporalGraph apply_delay(const TemporalGraph& g, std::span<const TimeEdgeKey> x, Time delta);

/// Increases the traversal time of each time-edge in x by delta; time labels
/// are unchanged. Unknown keys are rejected.
TemporalGraph apply_slow(const TemporalGraph& g, std::span<const TimeEdgeKey> x, Time delta);

/// All w such that some time-edge {v,w} exists with time label >= t.
/// Sorted ascending.
std::vector<VertexId> temporal_neighborhood(const TemporalGraph& g, VertexId v, Time t);

/// Per-vertex incidence lists (edge indices), shared by the solvers.
struct AdjacencyIndex {
    std::vector<std::vector<std::size_t>> incident;  // by vertex, ascending edge index

    static AdjacencyIndex build(const TemporalGraph& g);
};

}  // namespace minreach
