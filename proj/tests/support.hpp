#pragma once

// Independent reference implementations used as ground truth by the tests.
// Everything here works straight from the definitions (exhaustive
// enumeration), deliberately sharing no code with the solver paths it
// checks.

#include <algorithm>
#include <random>
#include <vector>

#include "minreach/arrival.hpp"
#include "minreach/forest.hpp"
#include "minreach/reductions.hpp"
#include "minreach/temporal_graph.hpp"

namespace test_support {

using namespace minreach;

/// Earliest arrivals by exhaustive enumeration of vertex-simple temporal
/// paths (departure >= previous arrival). Exponential; fine at test scale.
inline ArrivalMap enumerate_arrivals(const TemporalGraph& g, const SourceSet& s) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<Time> best(n, kNever);

    struct Walker {
        const TemporalGraph& g;
        std::vector<Time>& best;
        std::vector<char> visited;

        void walk(VertexId v, Time arrival) {
            if (arrival < best[static_cast<std::size_t>(v)]) best[static_cast<std::size_t>(v)] = arrival;
            visited[static_cast<std::size_t>(v)] = 1;
            for (const TimeEdge& e : g.edges()) {
                VertexId other;
                if (e.u == v)
                    other = e.v;
                else if (e.v == v)
                    other = e.u;
                else
                    continue;
                if (visited[static_cast<std::size_t>(other)]) continue;
                if (e.t < arrival) continue;
                walk(other, e.t + e.gamma);
            }
            visited[static_cast<std::size_t>(v)] = 0;
        }
    };

    Walker w{g, best, std::vector<char>(n, 0)};
    for (VertexId src : s.ids) w.walk(src, 0);
    return ArrivalMap{std::move(best)};
}

inline std::vector<VertexId> enumerate_reachable(const TemporalGraph& g, const SourceSet& s) {
    ArrivalMap m = enumerate_arrivals(g, s);
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (m.reached(v)) out.push_back(v);
    return out;
}

/// Earliest crossing arrival over one underlying edge from departure time
/// t_from, given the subset of delayed occurrences (by index).
inline Time crossing_arrival(std::span<const forest::EdgeOccurrence> edge, Time delta,
                             std::uint32_t delayed_mask, Time t_from) {
    Time best = kNever;
    for (std::size_t i = 0; i < edge.size(); ++i) {
        const bool delayed = (delayed_mask >> i) & 1u;
        const Time avail = delayed ? edge[i].t + delta : edge[i].t;
        if (avail < t_from) continue;
        best = std::min(best, avail + edge[i].gamma);
    }
    return best;
}

/// Reference for compute_kappa: try every delay subset.
inline int kappa_oracle(std::span<const forest::EdgeOccurrence> edge, Time delta, Time t_from,
                        Time t_to) {
    int best = forest::kImpossible;
    const std::uint32_t full = 1u << edge.size();
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        bool legal = true;
        for (std::size_t i = 0; i < edge.size(); ++i)
            if (((mask >> i) & 1u) && edge[i].undelayable) legal = false;
        if (!legal) continue;
        if (crossing_arrival(edge, delta, mask, t_from) != t_to) continue;
        best = std::min(best, static_cast<int>(std::popcount(mask)));
    }
    return best;
}

/// Reference for compute_kappa_hat: both directions under one shared subset.
inline int kappa_hat_oracle(std::span<const forest::EdgeOccurrence> edge, Time delta, Time t_near,
                            Time t_far) {
    int best = forest::kImpossible;
    const std::uint32_t full = 1u << edge.size();
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        bool legal = true;
        for (std::size_t i = 0; i < edge.size(); ++i)
            if (((mask >> i) & 1u) && edge[i].undelayable) legal = false;
        if (!legal) continue;
        if (crossing_arrival(edge, delta, mask, t_near) < t_far) continue;
        if (crossing_arrival(edge, delta, mask, t_far) < t_near) continue;
        best = std::min(best, static_cast<int>(std::popcount(mask)));
    }
    return best;
}

/// Does h contain a clique on ell vertices? Plain subset enumeration.
inline bool has_clique(const red::SimpleGraph& h, int ell) {
    if (ell <= 1) return h.n >= ell;
    std::vector<VertexId> pick;
    auto adjacent = [&](VertexId a, VertexId b) {
        auto key = std::minmax(a, b);
        return std::binary_search(h.edges.begin(), h.edges.end(),
                                  std::make_pair(key.first, key.second));
    };
    struct Rec {
        const red::SimpleGraph& h;
        int ell;
        std::vector<VertexId>& pick;
        decltype(adjacent)& adj;
        bool go(VertexId from) {
            if (static_cast<int>(pick.size()) == ell) return true;
            for (VertexId v = from; v < h.n; ++v) {
                bool ok = true;
                for (VertexId u : pick)
                    if (!adj(u, v)) ok = false;
                if (!ok) continue;
                pick.push_back(v);
                if (go(v + 1)) return true;
                pick.pop_back();
            }
            return false;
        }
    };
    Rec rec{h, ell, pick, adjacent};
    return rec.go(0);
}

/// All subsets of the graph's time-edge keys with size <= k.
inline std::vector<std::vector<TimeEdgeKey>> all_subsets_up_to(const TemporalGraph& g, int k) {
    std::vector<TimeEdgeKey> keys;
    for (const TimeEdge& e : g.edges()) keys.push_back(e.key());
    std::sort(keys.begin(), keys.end());
    std::vector<std::vector<TimeEdgeKey>> out;
    const std::uint32_t full = 1u << keys.size();
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (std::popcount(mask) > k) continue;
        std::vector<TimeEdgeKey> subset;
        for (std::size_t i = 0; i < keys.size(); ++i)
            if ((mask >> i) & 1u) subset.push_back(keys[i]);
        out.push_back(std::move(subset));
    }
    return out;
}

inline bool is_subset_of(std::span<const VertexId> inner, std::span<const VertexId> outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

/// Random sorted vertex subset containing `must_have`.
inline std::vector<VertexId> random_superset(std::mt19937_64& rng, VertexId n, VertexId must_have,
                                             double p) {
    std::vector<VertexId> out{must_have};
    for (VertexId v = 0; v < n; ++v) {
        if (v == must_have) continue;
        if ((static_cast<double>(rng() >> 11) * 0x1.0p-53) < p) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace test_support
