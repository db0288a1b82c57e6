#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minreach/arrival.hpp"
#include "minreach/temporal_graph.hpp"

namespace minreach {

/// Counters reported alongside a solve.
using Stats = std::map<std::string, std::int64_t>;

/// Delete at most k time-edges so that at most r vertices are reachable
/// from s.
struct DeleteInstance {
    TemporalGraph g;
    SourceSet s;
    int k = 0;
    std::uint64_t r = 0;

    void validate() const;
};

/// Delay at most k time-edges by delta so that at most r vertices are
/// reachable from s.
struct DelayInstance {
    TemporalGraph g;
    SourceSet s;
    int k = 0;
    std::uint64_t r = 0;
    Time delta = 1;

    void validate() const;
};

/// Slow at most k time-edges by delta (traversal times grow, labels stay).
struct SlowInstance {
    TemporalGraph g;
    SourceSet s;
    int k = 0;
    std::uint64_t r = 0;
    Time delta = 1;

    void validate() const;
};

/// Weighted delay variant on forests with an undelayable edge set f and a
/// weight bound r on the reached set.
struct WeightedForestDelayInstance {
    TemporalGraph g;
    WeightFn w;
    std::vector<TimeEdgeKey> f;  // sorted, subset of g's keys
    SourceSet s;
    int k = 0;
    Weight r = 0;
    Time delta = 1;

    void validate() const;  // does not check forestness; solvers do
    bool undelayable(const TimeEdgeKey& key) const;
};

SlowInstance slow_from_delay(const DelayInstance& inst);
DelayInstance delay_from_slow(const SlowInstance& inst);

/// Outcome of a solver run. A witness is present exactly when the result is
/// feasible and the solver produces one; it always verifies, and the
/// (weighted) reach it achieves equals `objective`. Exhaustive solvers also
/// report the optimum via `objective` when infeasible; decision solvers
/// leave it empty in that case.
struct SolveResult {
    bool feasible = false;
    std::optional<Weight> objective;
    std::optional<std::vector<TimeEdgeKey>> witness;
    Stats stats;
};

bool verify_delete(const DeleteInstance& inst, std::span<const TimeEdgeKey> x);
bool verify_delay(const DelayInstance& inst, std::span<const TimeEdgeKey> x);
bool verify_slow(const SlowInstance& inst, std::span<const TimeEdgeKey> x);
bool verify_weighted_forest(const WeightedForestDelayInstance& inst, std::span<const TimeEdgeKey> x);

}  // namespace minreach
