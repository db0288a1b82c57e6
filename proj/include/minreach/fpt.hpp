#pragma once

#include "minreach/instance.hpp"

namespace minreach::fpt {

/// Branch-and-search decision procedure for single-source slowing,
/// parameterized by the reachability bound r. Grows a candidate confinement
/// set R from {s}: accepts when the confinement network admits a flow of
/// value <= k (the min cut is the witness), prunes at |R| >= r, and otherwise
/// branches on one escape vertex per flow path. Branching is in ascending
/// vertex order and the first accepting branch wins, so results and stats
/// are deterministic.
SolveResult solve_slow_single_source(const TemporalGraph& g, VertexId s, int k, std::uint64_t r,
                                     Time delta);

/// Multi-source slowing via the fresh-source reduction; the witness is
/// mapped back to original time-edges.
SolveResult solve_slow(const SlowInstance& inst);

/// Delaying solved through slowing: the two problems agree on feasibility,
/// and an inclusion-minimal slow witness is also a delay witness. The
/// returned witness is minimalized and verified under delay semantics.
SolveResult solve_delay(const DelayInstance& inst);

/// Shrinks a valid slow witness to inclusion-minimality by attempting to
/// drop elements in sorted key order. Rejects invalid witnesses.
std::vector<TimeEdgeKey> minimalize_witness(const TemporalGraph& g, const SourceSet& s,
                                            std::span<const TimeEdgeKey> x, Time delta,
                                            std::uint64_t r);

/// Greedy variant of the search: one descent per candidate bound, extending
/// R by the whole branching set instead of branching, with the bound
/// iterated upward from |S| until a descent accepts. The witness is
/// minimalized and valid under both slow and delay semantics; the objective
/// is its measured reach (the accepted bound is in stats).
SolveResult approx_min_reach(const TemporalGraph& g, const SourceSet& s, int k, Time delta);

}  // namespace minreach::fpt
