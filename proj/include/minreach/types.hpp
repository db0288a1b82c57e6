#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace minreach {

using VertexId = std::int32_t;

/// Discrete time. Labels of time-edges start at 1; arrival 0 is reserved
/// for a source reaching itself.
using Time = std::int64_t;

/// Sentinel for "never reached". Strictly greater than any real time.
inline constexpr Time kNever = std::numeric_limits<Time>::max();

/// Addition that saturates at kNever.
constexpr Time time_add(Time a, Time b) {
    if (a == kNever || b == kNever) return kNever;
    return a + b;
}

/// Vertex weight. Sums saturate at kInfiniteWeight.
using Weight = std::uint64_t;
inline constexpr Weight kInfiniteWeight = std::numeric_limits<Weight>::max();

constexpr Weight weight_add(Weight a, Weight b) {
    if (a == kInfiniteWeight || b == kInfiniteWeight) return kInfiniteWeight;
    Weight s = a + b;
    if (s < a) return kInfiniteWeight;
    return s;
}

/// Identity of a time-edge: the unordered pair {u,v} stored as u < v plus
/// the time label. Ordering is lexicographic over (u, v, t).
struct TimeEdgeKey {
    VertexId u = 0;
    VertexId v = 0;
    Time t = 0;

    friend auto operator<=>(const TimeEdgeKey&, const TimeEdgeKey&) = default;
};

/// A time-edge with its traversal time. gamma = 0 is allowed.
struct TimeEdge {
    VertexId u = 0;
    VertexId v = 0;
    Time t = 0;
    Time gamma = 1;

    TimeEdgeKey key() const { return {u, v, t}; }
    /// Arrival when traversed undelayed.
    Time arrival() const { return t + gamma; }

    friend bool operator==(const TimeEdge&, const TimeEdge&) = default;
};

/// Canonicalizes the endpoint order and validates ranges.
TimeEdge make_time_edge(VertexId u, VertexId v, Time t, Time gamma = 1);

/// Raised when an internal consistency condition fails. Reaching one of
/// these would contradict a property the solvers rely on, so it is a bug,
/// not an input problem.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Raised by the brute-force oracles when an instance is too large to
/// enumerate under the configured cap. Never truncates silently.
struct EnumerationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace minreach
