#include "minreach/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace minreach::oracle {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t subset_count(std::uint64_t m, std::uint64_t k) {
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(m, 0)
    for (std::uint64_t i = 0; i <= std::min(m, k); ++i) {
        total = total + binom < total ? std::numeric_limits<std::uint64_t>::max() : total + binom;
        // C(m, i+1) = C(m, i) * (m - i) / (i + 1)
        binom = saturating_mul(binom, m - i) / (i + 1);
    }
    return total;
}

struct EnumerationOutcome {
    Weight best = kInfiniteWeight;
    std::vector<std::size_t> best_combo;  // indices into the enumeration universe
    std::int64_t evaluated = 0;
    bool short_circuited = false;
};

/// Runs the cardinality-ascending, lexicographic subset scan over a universe
/// of m elements. `eval` scores a combination; `floor` is a value that cannot
/// be undercut, used to stop early.
EnumerationOutcome enumerate_subsets(std::size_t m, std::size_t k, Weight floor,
                                     const std::function<Weight(std::span<const std::size_t>)>& eval) {
    EnumerationOutcome out;
    std::vector<std::size_t> combo;
    for (std::size_t c = 0; c <= std::min(m, k); ++c) {
        combo.resize(c);
        std::iota(combo.begin(), combo.end(), std::size_t{0});
        while (true) {
            Weight value = eval(combo);
            ++out.evaluated;
            if (value < out.best) {
                out.best = value;
                out.best_combo = combo;
                if (out.best <= floor) {
                    out.short_circuited = true;
                    return out;
                }
            }
            if (c == 0) break;
            // next combination in lexicographic order
            std::size_t i = c;
            while (i > 0 && combo[i - 1] == m - c + (i - 1)) --i;
            if (i == 0) break;
            ++combo[i - 1];
            for (std::size_t j = i; j < c; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    return out;
}

/// Edge indices of g ordered by (u, v, t) key, the oracle's tie-break order.
std::vector<std::size_t> key_sorted_indices(const TemporalGraph& g) {
    std::vector<std::size_t> order(g.edge_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return g.edge_at(a).key() < g.edge_at(b).key();
    });
    return order;
}

void check_cap(std::size_t m, std::size_t k, const OracleConfig& cfg) {
    std::uint64_t count = subset_count(m, k);
    if (count > cfg.subset_cap)
        throw EnumerationLimitError("brute-force enumeration would need " + std::to_string(count) +
                                    " subsets, above the cap of " + std::to_string(cfg.subset_cap));
}

std::vector<TimeEdgeKey> combo_to_keys(const std::vector<std::size_t>& combo,
                                       const std::vector<std::size_t>& order, const TemporalGraph& g) {
    std::vector<TimeEdgeKey> keys;
    keys.reserve(combo.size());
    for (std::size_t j : combo) keys.push_back(g.edge_at(order[j]).key());
    std::sort(keys.begin(), keys.end());
    return keys;
}

SolveResult finish(const EnumerationOutcome& out, const std::vector<std::size_t>& order,
                   const TemporalGraph& g, Weight bound) {
    SolveResult res;
    res.objective = out.best;
    res.feasible = out.best <= bound;
    if (res.feasible) res.witness = combo_to_keys(out.best_combo, order, g);
    res.stats["subsets_evaluated"] = out.evaluated;
    res.stats["short_circuited"] = out.short_circuited ? 1 : 0;
    return res;
}

/// Reach evaluation with reusable scratch buffers and a deletion mask; the
/// hot path of brute_delete.
class MaskedReachEvaluator {
public:
    explicit MaskedReachEvaluator(const TemporalGraph& g, const SourceSet& s) : g_(g), s_(s) {
        arrival_.resize(static_cast<std::size_t>(g.vertex_count()));
        masked_.assign(g.edge_count(), 0);
        const auto& edges = g.edges();
        std::size_t i = 0;
        while (i < edges.size()) {
            std::size_t j = i;
            while (j < edges.size() && edges[j].t == edges[i].t) ++j;
            groups_.emplace_back(i, j);
            i = j;
        }
    }

    void set_mask(std::size_t edge_index, bool on) { masked_[edge_index] = on ? 1 : 0; }

    std::uint64_t reach_count() {
        std::fill(arrival_.begin(), arrival_.end(), kNever);
        for (VertexId v : s_.ids) arrival_[static_cast<std::size_t>(v)] = 0;
        const auto& edges = g_.edges();
        for (auto [lo, hi] : groups_) {
            const Time t = edges[lo].t;
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t e = lo; e < hi; ++e) {
                    if (masked_[e]) continue;
                    const TimeEdge& te = edges[e];
                    Time& au = arrival_[static_cast<std::size_t>(te.u)];
                    Time& av = arrival_[static_cast<std::size_t>(te.v)];
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
        }
        std::uint64_t count = 0;
        for (Time a : arrival_)
            if (a != kNever) ++count;
        return count;
    }

private:
    const TemporalGraph& g_;
    const SourceSet& s_;
    std::vector<Time> arrival_;
    std::vector<char> masked_;
    std::vector<std::pair<std::size_t, std::size_t>> groups_;
};

}  // namespace

SolveResult brute_delete(const DeleteInstance& inst, const OracleConfig& cfg) {
    inst.validate();
    const std::size_t m = inst.g.edge_count();
    const std::size_t k = static_cast<std::size_t>(inst.k);
    check_cap(m, k, cfg);
    std::vector<std::size_t> order = key_sorted_indices(inst.g);
    MaskedReachEvaluator eval(inst.g, inst.s);
    EnumerationOutcome out = enumerate_subsets(
        m, k, static_cast<Weight>(inst.s.size()), [&](std::span<const std::size_t> combo) {
            for (std::size_t j : combo) eval.set_mask(order[j], true);
            Weight value = eval.reach_count();
            for (std::size_t j : combo) eval.set_mask(order[j], false);
            return value;
        });
    return finish(out, order, inst.g, inst.r);
}

SolveResult brute_delay(const DelayInstance& inst, const OracleConfig& cfg) {
    inst.validate();
    const std::size_t m = inst.g.edge_count();
    const std::size_t k = static_cast<std::size_t>(inst.k);
    check_cap(m, k, cfg);
    std::vector<std::size_t> order = key_sorted_indices(inst.g);
    std::vector<TimeEdgeKey> keys;
    EnumerationOutcome out = enumerate_subsets(
        m, k, static_cast<Weight>(inst.s.size()), [&](std::span<const std::size_t> combo) {
            keys.clear();
            for (std::size_t j : combo) keys.push_back(inst.g.edge_at(order[j]).key());
            return static_cast<Weight>(reachable_set(apply_delay(inst.g, keys, inst.delta), inst.s).size());
        });
    return finish(out, order, inst.g, inst.r);
}

SolveResult brute_slow(const SlowInstance& inst, const OracleConfig& cfg) {
    inst.validate();
    const std::size_t m = inst.g.edge_count();
    const std::size_t k = static_cast<std::size_t>(inst.k);
    check_cap(m, k, cfg);
    std::vector<std::size_t> order = key_sorted_indices(inst.g);
    std::vector<TimeEdgeKey> keys;
    EnumerationOutcome out = enumerate_subsets(
        m, k, static_cast<Weight>(inst.s.size()), [&](std::span<const std::size_t> combo) {
            keys.clear();
            for (std::size_t j : combo) keys.push_back(inst.g.edge_at(order[j]).key());
            return static_cast<Weight>(reachable_set(apply_slow(inst.g, keys, inst.delta), inst.s).size());
        });
    return finish(out, order, inst.g, inst.r);
}

SolveResult brute_weighted_forest(const WeightedForestDelayInstance& inst, const OracleConfig& cfg) {
    inst.validate();
    // Universe: delayable time-edges only, in key order.
    std::vector<TimeEdgeKey> universe;
    for (std::size_t i = 0; i < inst.g.edge_count(); ++i) {
        TimeEdgeKey key = inst.g.edge_at(i).key();
        if (!inst.undelayable(key)) universe.push_back(key);
    }
    std::sort(universe.begin(), universe.end());
    const std::size_t m = universe.size();
    const std::size_t k = static_cast<std::size_t>(inst.k);
    check_cap(m, k, cfg);

    Weight floor = weight_of(inst.w, inst.s.ids);
    std::vector<TimeEdgeKey> keys;
    EnumerationOutcome out =
        enumerate_subsets(m, k, floor, [&](std::span<const std::size_t> combo) {
            keys.clear();
            for (std::size_t j : combo) keys.push_back(universe[j]);
            auto reached = reachable_set(apply_delay(inst.g, keys, inst.delta), inst.s);
            return weight_of(inst.w, reached);
        });

    SolveResult res;
    res.objective = out.best;
    res.feasible = out.best <= inst.r;
    if (res.feasible) {
        std::vector<TimeEdgeKey> witness;
        for (std::size_t j : out.best_combo) witness.push_back(universe[j]);
        std::sort(witness.begin(), witness.end());
        res.witness = std::move(witness);
    }
    res.stats["subsets_evaluated"] = out.evaluated;
    res.stats["short_circuited"] = out.short_circuited ? 1 : 0;
    return res;
}

}  // namespace minreach::oracle
