#include "minreach/instance.hpp"

#include <algorithm>

namespace minreach {

namespace {

void check_sources(const SourceSet& s, const TemporalGraph& g, std::uint64_t r) {
    for (VertexId v : s.ids)
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("source vertex out of range");
    if (s.ids.empty()) throw std::invalid_argument("source set must be nonempty");
    if (s.ids.size() > r) throw std::invalid_argument("instance requires |S| <= r");
}

void check_witness_keys(const TemporalGraph& g, std::span<const TimeEdgeKey> x) {
    for (const TimeEdgeKey& key : x)
        if (!g.has_edge(key)) throw std::invalid_argument("witness references unknown time-edge");
}

}  // namespace

void DeleteInstance::validate() const {
    if (k < 0) throw std::invalid_argument("budget k must be >= 0");
    check_sources(s, g, r);
}

void DelayInstance::validate() const {
    if (k < 0) throw std::invalid_argument("budget k must be >= 0");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    check_sources(s, g, r);
}

void SlowInstance::validate() const {
    if (k < 0) throw std::invalid_argument("budget k must be >= 0");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    check_sources(s, g, r);
}

void WeightedForestDelayInstance::validate() const {
    if (k < 0) throw std::invalid_argument("budget k must be >= 0");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    if (s.ids.empty()) throw std::invalid_argument("source set must be nonempty");
    for (VertexId v : s.ids)
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("source vertex out of range");
    if (w.size() != g.vertex_count()) throw std::invalid_argument("weight function size mismatch");
    if (!std::is_sorted(f.begin(), f.end())) throw std::invalid_argument("undelayable set must be sorted");
    for (const TimeEdgeKey& key : f)
        if (!g.has_edge(key)) throw std::invalid_argument("undelayable set references unknown time-edge");
}

bool WeightedForestDelayInstance::undelayable(const TimeEdgeKey& key) const {
    return std::binary_search(f.begin(), f.end(), key);
}

SlowInstance slow_from_delay(const DelayInstance& inst) {
    return SlowInstance{inst.g, inst.s, inst.k, inst.r, inst.delta};
}

DelayInstance delay_from_slow(const SlowInstance& inst) {
    return DelayInstance{inst.g, inst.s, inst.k, inst.r, inst.delta};
}

bool verify_delete(const DeleteInstance& inst, std::span<const TimeEdgeKey> x) {
    check_witness_keys(inst.g, x);
    if (x.size() > static_cast<std::size_t>(inst.k)) return false;
    return reachable_set(apply_delete(inst.g, x), inst.s).size() <= inst.r;
}

bool verify_delay(const DelayInstance& inst, std::span<const TimeEdgeKey> x) {
    check_witness_keys(inst.g, x);
    if (x.size() > static_cast<std::size_t>(inst.k)) return false;
    return reachable_set(apply_delay(inst.g, x, inst.delta), inst.s).size() <= inst.r;
}

bool verify_slow(const SlowInstance& inst, std::span<const TimeEdgeKey> x) {
    check_witness_keys(inst.g, x);
    if (x.size() > static_cast<std::size_t>(inst.k)) return false;
    return reachable_set(apply_slow(inst.g, x, inst.delta), inst.s).size() <= inst.r;
}

bool verify_weighted_forest(const WeightedForestDelayInstance& inst, std::span<const TimeEdgeKey> x) {
    check_witness_keys(inst.g, x);
    for (const TimeEdgeKey& key : x)
        if (inst.undelayable(key)) throw std::invalid_argument("witness delays an undelayable time-edge");
    if (x.size() > static_cast<std::size_t>(inst.k)) return false;
    auto reached = reachable_set(apply_delay(inst.g, x, inst.delta), inst.s);
    return weight_of(inst.w, reached) <= inst.r;
}

}  // namespace minreach
