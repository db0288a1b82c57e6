#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minreach/instance.hpp"

namespace minreach::red {

/// Traceability data for an instance transformation: where original
/// vertices/time-edges went, plus the produced parameters. Used to map
/// witnesses back.
struct ReductionReceipt {
    std::map<VertexId, VertexId> vertex_map;      // original -> produced
    std::map<TimeEdgeKey, TimeEdgeKey> edge_map;  // original -> produced representative
    std::map<std::string, std::int64_t> params;
};

/// True iff the underlying simple graph is acyclic. Parallel time-edges on
/// one vertex pair count as a single underlying edge.
bool is_forest(const TemporalGraph& g);

/// Replaces each underlying edge {v,u} by a subdivision v - e_vu - e_uv - u
/// plus two source-attached leaves, turning deletions into delays: deleting
/// ({v,u}, t) corresponds to delaying the middle edge at 3t - 1 by 3 tau.
/// Requires unit traversal times. The produced bound grows by the number of
/// added vertices, all of which are always reached.
std::pair<DelayInstance, ReductionReceipt> delete_to_delay(const DeleteInstance& inst);

/// Maps a witness of the produced delay instance back to a deletion set:
/// any delayed edge inside the gadget of ({v,u}, t) maps to deleting
/// ({v,u}, t); delays of the source-attachment edges are dropped.
std::vector<TimeEdgeKey> map_delay_witness_to_delete(const DeleteInstance& original,
                                                     const ReductionReceipt& receipt,
                                                     std::span<const TimeEdgeKey> witness);

/// Adds a fresh source adjacent to every original source at time 1 and
/// shifts all original labels up by delta + 1, so slowing a new edge has no
/// effect. Produced bound is r + 1 and |S| = 1.
std::pair<SlowInstance, ReductionReceipt> to_single_source(const SlowInstance& inst);

/// Witness back-map for to_single_source: drops new-source edges, shifts
/// the rest down by delta + 1.
std::vector<TimeEdgeKey> map_single_source_witness_back(const SlowInstance& original,
                                                        const ReductionReceipt& receipt,
                                                        std::span<const TimeEdgeKey> witness);

/// A simple undirected graph used as reduction input.
struct SimpleGraph {
    VertexId n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;  // canonical u < v, unique

    static SimpleGraph of(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges);
};

struct CliqueDeleteResult {
    DeleteInstance inst;
    /// Set when the clique question is degenerate (ell > |V(h)| or fewer
    /// edges than an ell-clique needs); the emitted instance is then a
    /// canonical infeasible one rather than the standard construction.
    bool trivially_infeasible = false;
};

/// Encodes "does h contain a clique of size ell" as a deletion instance on
/// a two-layer temporal graph: layer 1 stars the source into one vertex per
/// edge of h, layer 2 connects each edge vertex to its endpoints;
/// k = m - C(ell,2) and r = 1 + ell + C(ell,2).
CliqueDeleteResult clique_to_delete(const SimpleGraph& h, int ell);

/// Replaces every vertex of underlying degree > 3 by a path of deg - 2 new
/// vertices joined by undelayable, zero-traversal edges present at every
/// step of the horizon, distributing the incident edges so every vertex
/// ends with degree <= 3. Weights move to the first path vertex; sources
/// stay on it. Rejects non-forests.
std::pair<WeightedForestDelayInstance, ReductionReceipt> unfold_degree3(
    const WeightedForestDelayInstance& inst);

}  // namespace minreach::red
