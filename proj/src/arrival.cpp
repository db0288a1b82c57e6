#include "minreach/arrival.hpp"

#include <algorithm>

namespace minreach {

ArrivalMap earliest_arrival(const TemporalGraph& g, const SourceSet& s) {
    std::vector<Time> arrival(static_cast<std::size_t>(g.vertex_count()), kNever);
    for (VertexId v : s.ids) arrival[static_cast<std::size_t>(v)] = 0;

    const std::vector<TimeEdge>& edges = g.edges();
    std::size_t i = 0;
    while (i < edges.size()) {
        std::size_t j = i;
        const Time t = edges[i].t;
        while (j < edges.size() && edges[j].t == t) ++j;

        // Within the group, a gamma = 0 edge can produce an arrival equal to
        // t, enabling further edges of the same group.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t e = i; e < j; ++e) {
                const TimeEdge& te = edges[e];
                Time& au = arrival[static_cast<std::size_t>(te.u)];
                Time& av = arrival[static_cast<std::size_t>(te.v)];
                const Time reach = t + te.gamma;
                if (au <= t && reach < av) {
                    av = reach;
                    changed = true;
                }
                if (av <= t && reach < au) {
                    au = reach;
                    changed = true;
                }
            }
        }
        i = j;
    }
    return ArrivalMap{std::move(arrival)};
}

std::vector<VertexId> reachable_set(const TemporalGraph& g, const SourceSet& s) {
    return reachable_at(g, s, kNever);
}

std::vector<VertexId> reachable_at(const TemporalGraph& g, const SourceSet& s, Time bound) {
    ArrivalMap m = earliest_arrival(g, s);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (m.at(v) != kNever && m.at(v) <= bound) out.push_back(v);
    return out;
}

}  // namespace minreach
