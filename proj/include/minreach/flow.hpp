#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "minreach/temporal_graph.hpp"
#include "minreach/types.hpp"

namespace minreach::flow {

using Capacity = std::int64_t;
inline constexpr Capacity kInfiniteCapacity = std::numeric_limits<Capacity>::max();

struct FlowNode {
    enum class Kind { Copy, GadgetIn, GadgetOut, Sink };
    Kind kind = Kind::Sink;
    VertexId v = -1;         // Copy only
    Time t = 0;              // Copy only
    std::size_t gadget = 0;  // GadgetIn/GadgetOut: index into unit_edges()
};

struct Arc {
    int from = -1;
    int to = -1;
    Capacity cap = kInfiniteCapacity;
    std::optional<TimeEdgeKey> edge;  // set exactly on the unit gadget arc
};

/// Time-expanded network for a source s and a candidate confinement set R.
/// Copies v^t exist for the times touched by gadgets of within-R time-edges,
/// for the exit times of rule (3), and t = 0 for s. Node ids are assigned in
/// a fixed key order, so construction, search and cuts are deterministic.
class FlowNetwork {
public:
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const FlowNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    int source() const { return source_; }
    int sink() const { return sink_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    /// Within-R time-edges carrying the unit arcs, in graph order.
    const std::vector<TimeEdge>& unit_edges() const { return unit_edges_; }

    std::optional<int> find_copy(VertexId v, Time t) const;
    /// Exit time of the (v^t, z) arc for v, if v has one.
    std::optional<Time> exit_time(VertexId v) const;

    struct AdjEntry {
        int neighbor;
        int arc;
        bool reverse;
    };
    const std::vector<AdjEntry>& residual_adjacency(int node) const {
        return radj_[static_cast<std::size_t>(node)];
    }

    /// Chain successor arc (v^t, v^t') of a copy node, -1 if none.
    int chain_arc(int node) const { return chain_arc_[static_cast<std::size_t>(node)]; }
    /// Arc (v^t, z) leaving a copy node, -1 if none.
    int sink_arc(int node) const { return sink_arc_[static_cast<std::size_t>(node)]; }

private:
    friend FlowNetwork build_flow_network(const TemporalGraph&, const AdjacencyIndex&, VertexId,
                                          std::span<const VertexId>, Time);
    std::vector<FlowNode> nodes_;
    std::vector<Arc> arcs_;  // sorted by (from, to)
    std::vector<std::vector<AdjEntry>> radj_;
    std::vector<int> chain_arc_;
    std::vector<int> sink_arc_;
    std::vector<TimeEdge> unit_edges_;
    int source_ = -1;
    int sink_ = -1;
};

/// Builds the network for (g, s, R, delta). R must be sorted and contain s.
FlowNetwork build_flow_network(const TemporalGraph& g, VertexId s, std::span<const VertexId> r_set,
                               Time delta);
/// Same, reusing a prebuilt incidence index of g.
FlowNetwork build_flow_network(const TemporalGraph& g, const AdjacencyIndex& idx, VertexId s,
                               std::span<const VertexId> r_set, Time delta);

/// Integral flow. When exceeds_bound is set the stored flow has value
/// exactly bound + 1 (the final augmentation is capped), which is what the
/// branching step consumes.
struct FlowAssignment {
    std::vector<std::int64_t> flow;  // per arc index
    std::uint64_t value = 0;
    bool exceeds_bound = false;
};

/// Runs breadth-first augmentation until the maximum flow is reached or the
/// value would exceed `bound`. An augmenting path of infinite residual
/// capacity exceeds any bound immediately.
FlowAssignment bounded_max_flow(const FlowNetwork& net, std::uint64_t bound);

/// Unit arcs crossing the residual-reachable side of a maximum flow, mapped
/// back to their time-edges. Rejects flows that exceeded the bound.
std::vector<TimeEdgeKey> min_cut_timeedges(const FlowNetwork& net, const FlowAssignment& f);

/// Decomposes a bound-exceeding flow into unit paths, reroutes any path that
/// leaves a copy v^t through a gadget or delay arc into a later exit arc
/// (v^b, z) with b >= t, and reports the exit pairs (v, t) that carry flow.
std::vector<std::pair<VertexId, Time>> escape_pairs(const FlowNetwork& net, const FlowAssignment& f);

/// One vertex outside R per escape pair: the smallest-id member of
/// the temporal neighborhood N(v, t) \ R. Sorted, duplicate-free.
std::vector<VertexId> branching_set(const TemporalGraph& g, std::span<const VertexId> r_set,
                                    std::span<const std::pair<VertexId, Time>> h);
/// Same, reusing a prebuilt incidence index of g.
std::vector<VertexId> branching_set(const TemporalGraph& g, const AdjacencyIndex& idx,
                                    std::span<const VertexId> r_set,
                                    std::span<const std::pair<VertexId, Time>> h);

/// Plain-text arc list for inspection; not a stability contract.
void dump(const FlowNetwork& net, std::ostream& os);

}  // namespace minreach::flow
