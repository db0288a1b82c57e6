#pragma once

#include <map>
#include <span>
#include <vector>

#include "minreach/instance.hpp"

namespace minreach::forest {

/// One time-edge living on an underlying tree edge.
struct EdgeOccurrence {
    Time t = 1;
    Time gamma = 1;
    bool undelayable = false;
};

inline constexpr int kImpossible = std::numeric_limits<int>::max();

/// Minimal number of occurrences on one underlying edge to delay by delta so
/// that, departing one endpoint at time t_from, the earliest crossing
/// arrival is exactly t_to (and nothing arrives earlier). An undelayed
/// occurrence (b, gamma) is usable iff b >= t_from with arrival b + gamma; a
/// delayed one iff b + delta >= t_from with arrival b + delta + gamma.
/// Returns kImpossible when no delay set achieves it.
int compute_kappa(std::span<const EdgeOccurrence> edge, Time delta, Time t_from, Time t_to);

/// Minimal number of delays on one underlying edge so that crossings
/// departing at t_near arrive no earlier than t_far AND crossings departing
/// at t_far arrive no earlier than t_near. One shared delay set serves both
/// directions. Symmetric in its two time arguments.
int compute_kappa_hat(std::span<const EdgeOccurrence> edge, Time delta, Time t_near, Time t_far);

/// Candidate first-arrival times: 0, every undelayed and delayed crossing
/// arrival, and kNever. Every realizable arrival under any delay set lies
/// in this set.
struct TimeAxis {
    std::vector<Time> times;  // sorted ascending, kNever last

    static TimeAxis for_edges(std::span<const TimeEdge> edges, Time delta);
    std::size_t size() const { return times.size(); }
    Time at(std::size_t i) const { return times[i]; }
    std::size_t index_of(Time t) const;
};

/// A connected component of the underlying forest, rooted at its smallest
/// leaf (a single vertex roots at itself). Valid only for maximum degree
/// <= 3, so the root has one child and every other vertex at most two.
struct RootedTree {
    std::vector<VertexId> vertices;  // sorted
    VertexId root = -1;
    std::map<VertexId, VertexId> parent;                       // absent for the root
    std::map<VertexId, std::vector<VertexId>> children;        // sorted
    std::map<VertexId, std::vector<EdgeOccurrence>> up_edge;   // occurrences on {v, parent(v)}
    std::vector<VertexId> postorder;

    static std::vector<RootedTree> build_forest(const WeightedForestDelayInstance& inst);
};

/// Table D[v][k][t][outside]: minimal weight reached inside the subtree of v
/// given that v is first reached exactly at time t, with `outside` telling
/// whether that first reach comes from outside the subtree. Entries for
/// sources at t > 0 are infinite.
class DpTable {
public:
    DpTable(TimeAxis axis, int budget, std::span<const VertexId> vertices);

    Weight at(VertexId v, int k, std::size_t ti, bool outside) const;
    Weight& at(VertexId v, int k, std::size_t ti, bool outside);

    const TimeAxis& axis() const { return axis_; }
    int budget() const { return budget_; }

private:
    TimeAxis axis_;
    int budget_;
    std::map<VertexId, std::vector<Weight>> cells_;
};

/// Bottom-up evaluation over one rooted tree of the (already unfolded)
/// instance.
DpTable compute_table(const WeightedForestDelayInstance& inst, const RootedTree& tree);

/// Optimal reached weight of the tree with at most k delays:
/// min over t of D[root][k][t][false].
Weight solve_tree(const DpTable& table, const RootedTree& tree, int k);

/// Optimal split of a total budget across per-tree optima.
Weight combine_forest(std::span<const std::vector<Weight>> per_tree, int total_k);

/// Full pipeline: unfold to degree <= 3, root each tree, run the table,
/// combine budgets. Exact objective; no witness (feasibility and value are
/// the contract).
SolveResult solve_weighted_forest_delay(const WeightedForestDelayInstance& inst);

/// Deletion on forests through the delete-to-delay reduction and the
/// weighted solver with unit weights. Exact feasibility and objective; no
/// witness.
SolveResult solve_delete_on_forest(const DeleteInstance& inst);

}  // namespace minreach::forest
