#pragma once

#include "minreach/instance.hpp"

namespace minreach::oracle {

/// Enumeration guard for the brute-force solvers. Exceeding the cap raises
/// EnumerationLimitError; the oracles never truncate silently.
struct OracleConfig {
    std::uint64_t subset_cap = std::uint64_t{1} << 24;
};

/// Exhaustive minimum over all deletion sets of size <= k. Subsets are tried
/// by increasing cardinality and, within a cardinality, in lexicographic
/// order of the sorted (u, v, t) key sequence; the first attainer of each
/// strictly better value is kept, so the reported witness is the
/// fewest-edges, lexicographically smallest optimum. The witness is present
/// exactly when the instance is feasible.
SolveResult brute_delete(const DeleteInstance& inst, const OracleConfig& cfg = {});

/// Same contract for delaying.
SolveResult brute_delay(const DelayInstance& inst, const OracleConfig& cfg = {});

/// Same contract for slowing.
SolveResult brute_slow(const SlowInstance& inst, const OracleConfig& cfg = {});

/// Same contract for the weighted forest variant; only delayable time-edges
/// enter the enumeration and the objective is the reached weight.
SolveResult brute_weighted_forest(const WeightedForestDelayInstance& inst, const OracleConfig& cfg = {});

}  // namespace minreach::oracle
