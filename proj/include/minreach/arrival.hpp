#pragma once

#include <vector>

#include "minreach/temporal_graph.hpp"
#include "minreach/types.hpp"

namespace minreach {

/// Per-vertex earliest arrival times. Sources sit at 0, unreached vertices
/// at kNever.
struct ArrivalMap {
    std::vector<Time> arrival;

    Time at(VertexId v) const { return arrival[static_cast<std::size_t>(v)]; }
    bool reached(VertexId v) const { return at(v) != kNever; }
};

/// Earliest arrival from any source, under the departure rule that a
/// time-edge at label t extends a partial path with arrival a iff t >= a.
/// Time-edges with gamma = 0 can chain within an equal-label group, so each
/// group is iterated to a fixpoint.
ArrivalMap earliest_arrival(const TemporalGraph& g, const SourceSet& s);

/// Vertices with a finite arrival; always contains the sources. Sorted.
std::vector<VertexId> reachable_set(const TemporalGraph& g, const SourceSet& s);

/// Vertices with arrival <= bound. Sorted.
std::vector<VertexId> reachable_at(const TemporalGraph& g, const SourceSet& s, Time bound);

}  // namespace minreach
