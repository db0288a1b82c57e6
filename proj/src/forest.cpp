#include "minreach/forest.hpp"

#include <algorithm>
#include <set>

#include "minreach/reductions.hpp"

namespace minreach::forest {

int compute_kappa(std::span<const EdgeOccurrence> edge, Time delta, Time t_from, Time t_to) {
    int forced = 0;
    bool has_exact = false;
    for (const EdgeOccurrence& occ : edge) {
        const bool usable = occ.t >= t_from;
        if (!usable) continue;
        const Time arr = occ.t + occ.gamma;
        if (arr < t_to) {
            // Arrives too early undelayed; must be delayed (it stays usable,
            // since occ.t + delta >= t_from holds a fortiori).
            if (occ.undelayable) return kImpossible;
            const Time darr = arr + delta;
            if (darr < t_to) return kImpossible;
            if (darr == t_to) has_exact = true;
            ++forced;
        } else if (arr == t_to) {
            has_exact = true;
        }
    }
    if (t_to == kNever) return forced;  // forced is 0 here: no usable occurrence exists
    if (has_exact) return forced;
    // One extra delay can create the exact arrival by waking an occurrence
    // that is unusable undelayed.
    for (const EdgeOccurrence& occ : edge) {
        if (occ.undelayable) continue;
        if (occ.t >= t_from) continue;
        if (occ.t + delta >= t_from && occ.t + delta + occ.gamma == t_to) return forced + 1;
    }
    return kImpossible;
}

int compute_kappa_hat(std::span<const EdgeOccurrence> edge, Time delta, Time t_near, Time t_far) {
    auto too_early = [&](Time avail, Time arr) {
        return (avail >= t_near && arr < t_far) || (avail >= t_far && arr < t_near);
    };
    int forced = 0;
    for (const EdgeOccurrence& occ : edge) {
        const Time arr = occ.t + occ.gamma;
        if (!too_early(occ.t, arr)) continue;
        if (occ.undelayable) return kImpossible;
        if (too_early(occ.t + delta, arr + delta)) return kImpossible;
        ++forced;
    }
    return forced;
}

TimeAxis TimeAxis::for_edges(std::span<const TimeEdge> edges, Time delta) {
    std::set<Time> values{0, kNever};
    for (const TimeEdge& e : edges) {
        values.insert(e.t + e.gamma);
        values.insert(e.t + e.gamma + delta);
    }
    return TimeAxis{{values.begin(), values.end()}};
}

std::size_t TimeAxis::index_of(Time t) const {
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end() || *it != t) throw InternalError("time value missing from the axis");
    return static_cast<std::size_t>(it - times.begin());
}

std::vector<RootedTree> RootedTree::build_forest(const WeightedForestDelayInstance& inst) {
    const VertexId n = inst.g.vertex_count();
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeOccurrence>> pair_occ;
    for (const TimeEdge& e : inst.g.edges())
        pair_occ[{e.u, e.v}].push_back(EdgeOccurrence{e.t, e.gamma, inst.undelayable(e.key())});

    std::vector<std::vector<VertexId>> nbr(static_cast<std::size_t>(n));
    for (const auto& [p, occ] : pair_occ) {
        nbr[static_cast<std::size_t>(p.first)].push_back(p.second);
        nbr[static_cast<std::size_t>(p.second)].push_back(p.first);
    }
    for (auto& list : nbr) std::sort(list.begin(), list.end());

    std::vector<RootedTree> out;
    std::vector<char> assigned(static_cast<std::size_t>(n), 0);
    for (VertexId start = 0; start < n; ++start) {
        if (assigned[static_cast<std::size_t>(start)]) continue;
        // Collect the component.
        std::vector<VertexId> comp{start};
        assigned[static_cast<std::size_t>(start)] = 1;
        for (std::size_t qi = 0; qi < comp.size(); ++qi)
            for (VertexId w : nbr[static_cast<std::size_t>(comp[qi])])
                if (!assigned[static_cast<std::size_t>(w)]) {
                    assigned[static_cast<std::size_t>(w)] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());

        RootedTree tree;
        tree.vertices = comp;
        tree.root = -1;
        for (VertexId v : comp)
            if (nbr[static_cast<std::size_t>(v)].size() <= 1) {
                tree.root = v;
                break;
            }
        if (tree.root < 0) throw std::invalid_argument("component has no leaf; not a tree");

        // Orient away from the root.
        std::vector<VertexId> queue{tree.root};
        std::set<VertexId> visited{tree.root};
        while (!queue.empty()) {
            VertexId v = queue.back();
            queue.pop_back();
            tree.children[v];  // ensure presence
            for (VertexId w : nbr[static_cast<std::size_t>(v)]) {
                if (visited.contains(w)) continue;
                visited.insert(w);
                tree.parent[w] = v;
                tree.children[v].push_back(w);
                auto key = std::minmax(v, w);
                tree.up_edge[w] = pair_occ.at({key.first, key.second});
                queue.push_back(w);
            }
        }
        for (auto& [v, kids] : tree.children) std::sort(kids.begin(), kids.end());

        // Postorder: children strictly before parents.
        std::vector<std::pair<VertexId, bool>> stack{{tree.root, false}};
        while (!stack.empty()) {
            auto [v, expanded] = stack.back();
            stack.pop_back();
            if (expanded) {
                tree.postorder.push_back(v);
                continue;
            }
            stack.emplace_back(v, true);
            for (VertexId c : tree.children.at(v)) stack.emplace_back(c, false);
        }
        out.push_back(std::move(tree));
    }
    return out;
}

DpTable::DpTable(TimeAxis axis, int budget, std::span<const VertexId> vertices)
    : axis_(std::move(axis)), budget_(budget) {
    const std::size_t per_vertex =
        static_cast<std::size_t>(budget_ + 1) * axis_.size() * 2;
    for (VertexId v : vertices) cells_[v].assign(per_vertex, kInfiniteWeight);
}

Weight DpTable::at(VertexId v, int k, std::size_t ti, bool outside) const {
    const std::size_t slot = (static_cast<std::size_t>(k) * axis_.size() + ti) * 2 +
                             (outside ? 1 : 0);
    return cells_.at(v)[slot];
}

Weight& DpTable::at(VertexId v, int k, std::size_t ti, bool outside) {
    const std::size_t slot = (static_cast<std::size_t>(k) * axis_.size() + ti) * 2 +
                             (outside ? 1 : 0);
    return cells_.at(v)[slot];
}

namespace {

/// Per-child arrays, indexed by the child's total budget (edge + subtree):
/// the cheapest subtree weight when the child interacts with its parent in
/// one of the three ways.
struct ChildModes {
    std::vector<Weight> up;     // child's side first reaches the parent, exactly at t
    std::vector<Weight> down;   // child first reached from the parent side, flag set
    std::vector<Weight> indep;  // neither side crosses early; child keeps its own time
};

}  // namespace

DpTable compute_table(const WeightedForestDelayInstance& inst, const RootedTree& tree) {
    for (VertexId v : tree.vertices) {
        const std::size_t kids = tree.children.at(v).size();
        const std::size_t cap = v == tree.root ? 1 : 2;
        if (kids > cap)
            throw std::invalid_argument("tree exceeds the degree-3 bound; unfold first");
    }

    // Candidate times from this component's occurrences.
    std::vector<TimeEdge> component_edges;
    for (const auto& [v, occs] : tree.up_edge)
        for (const EdgeOccurrence& occ : occs)
            component_edges.push_back(TimeEdge{0, 1, occ.t, occ.gamma});
    TimeAxis axis = TimeAxis::for_edges(component_edges, inst.delta);
    const std::size_t T = axis.size();
    const int K = inst.k;

    DpTable table(axis, K, tree.vertices);

    // Edge-delay cost matrices per non-root vertex, flattened [from * T + to].
    std::map<VertexId, std::vector<int>> kap, kap_hat;
    for (VertexId v : tree.vertices) {
        if (v == tree.root) continue;
        const auto& occ = tree.up_edge.at(v);
        std::vector<int> m(T * T), mh(T * T);
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = 0; b < T; ++b) {
                m[a * T + b] = compute_kappa(occ, inst.delta, axis.at(a), axis.at(b));
                mh[a * T + b] = compute_kappa_hat(occ, inst.delta, axis.at(a), axis.at(b));
            }
        kap[v] = std::move(m);
        kap_hat[v] = std::move(mh);
    }

    for (VertexId v : tree.postorder) {
        const auto& kids = tree.children.at(v);
        const bool src = inst.s.contains(v);
        const Weight wv = inst.w.at(v);

        for (std::size_t ti = 0; ti < T; ++ti) {
            const Time t = axis.at(ti);

            std::vector<ChildModes> modes;
            for (VertexId c : kids) {
                ChildModes cm;
                cm.up.assign(static_cast<std::size_t>(K) + 1, kInfiniteWeight);
                cm.down.assign(static_cast<std::size_t>(K) + 1, kInfiniteWeight);
                cm.indep.assign(static_cast<std::size_t>(K) + 1, kInfiniteWeight);
                const auto& km = kap.at(c);
                const auto& kmh = kap_hat.at(c);
                for (std::size_t tj = 0; tj < T; ++tj) {
                    const int cost_up = km[tj * T + ti];
                    const int cost_down = km[ti * T + tj];
                    const int cost_ind = kmh[tj * T + ti];
                    if (cost_up != kImpossible)
                        for (int kc = cost_up; kc <= K; ++kc)
                            cm.up[static_cast<std::size_t>(kc)] =
                                std::min(cm.up[static_cast<std::size_t>(kc)],
                                         table.at(c, kc - cost_up, tj, false));
                    if (cost_down != kImpossible)
                        for (int kc = cost_down; kc <= K; ++kc)
                            cm.down[static_cast<std::size_t>(kc)] =
                                std::min(cm.down[static_cast<std::size_t>(kc)],
                                         table.at(c, kc - cost_down, tj, true));
                    if (cost_ind != kImpossible)
                        for (int kc = cost_ind; kc <= K; ++kc)
                            cm.indep[static_cast<std::size_t>(kc)] =
                                std::min(cm.indep[static_cast<std::size_t>(kc)],
                                         table.at(c, kc - cost_ind, tj, false));
                }
                modes.push_back(std::move(cm));
            }

            auto any_of = [&](const ChildModes& cm, int kc) {
                return std::min({cm.up[static_cast<std::size_t>(kc)],
                                 cm.down[static_cast<std::size_t>(kc)],
                                 cm.indep[static_cast<std::size_t>(kc)]});
            };
            auto passive_of = [&](const ChildModes& cm, int kc) {
                return std::min(cm.down[static_cast<std::size_t>(kc)],
                                cm.indep[static_cast<std::size_t>(kc)]);
            };

            for (int k = 0; k <= K; ++k) {
                // First reach of v comes from inside the subtree, exactly at t.
                Weight inside_val;
                if (kids.empty()) {
                    inside_val = t == kNever ? 0 : kInfiniteWeight;
                } else if (t == kNever) {
                    // Nothing may ever cross up into v.
                    if (kids.size() == 1) {
                        inside_val = modes[0].indep[static_cast<std::size_t>(k)];
                    } else {
                        inside_val = kInfiniteWeight;
                        for (int k1 = 0; k1 <= k; ++k1)
                            inside_val = std::min(
                                inside_val,
                                weight_add(modes[0].indep[static_cast<std::size_t>(k1)],
                                           modes[1].indep[static_cast<std::size_t>(k - k1)]));
                    }
                } else {
                    // At least one child must deliver v exactly at t; the
                    // other may deliver at t too, stay independent, or be
                    // first reached back down through v.
                    Weight best = kInfiniteWeight;
                    if (kids.size() == 1) {
                        best = modes[0].up[static_cast<std::size_t>(k)];
                    } else {
                        for (int k1 = 0; k1 <= k; ++k1) {
                            const int k2 = k - k1;
                            best = std::min(
                                best, weight_add(modes[0].up[static_cast<std::size_t>(k1)],
                                                 any_of(modes[1], k2)));
                            best = std::min(
                                best, weight_add(any_of(modes[0], k1),
                                                 modes[1].up[static_cast<std::size_t>(k2)]));
                        }
                    }
                    inside_val = weight_add(wv, best);
                }

                // First reach of v comes from the parent side (or v is a
                // source), at t; children are reached through v or keep
                // their own, never-earlier time.
                const Weight base = t == kNever ? 0 : wv;
                Weight outside_val;
                if (kids.empty()) {
                    outside_val = base;
                } else if (kids.size() == 1) {
                    outside_val = weight_add(base, passive_of(modes[0], k));
                } else {
                    Weight best = kInfiniteWeight;
                    for (int k1 = 0; k1 <= k; ++k1)
                        best = std::min(best, weight_add(passive_of(modes[0], k1),
                                                         passive_of(modes[1], k - k1)));
                    outside_val = weight_add(base, best);
                }

                if (src) {
                    const Weight val = t == 0 ? outside_val : kInfiniteWeight;
                    table.at(v, k, ti, false) = val;
                    table.at(v, k, ti, true) = val;
                } else {
                    table.at(v, k, ti, false) = inside_val;
                    table.at(v, k, ti, true) = outside_val;
                }
            }
        }
    }
    return table;
}

Weight solve_tree(const DpTable& table, const RootedTree& tree, int k) {
    Weight best = kInfiniteWeight;
    for (std::size_t ti = 0; ti < table.axis().size(); ++ti)
        best = std::min(best, table.at(tree.root, k, ti, false));
    return best;
}

Weight combine_forest(std::span<const std::vector<Weight>> per_tree, int total_k) {
    if (per_tree.empty()) return 0;
    std::vector<Weight> acc(static_cast<std::size_t>(total_k) + 1, kInfiniteWeight);
    for (int k = 0; k <= total_k; ++k)
        for (int kp = 0; kp <= k; ++kp)
            acc[static_cast<std::size_t>(k)] =
                std::min(acc[static_cast<std::size_t>(k)], per_tree[0][static_cast<std::size_t>(kp)]);
    for (std::size_t i = 1; i < per_tree.size(); ++i) {
        std::vector<Weight> next(static_cast<std::size_t>(total_k) + 1, kInfiniteWeight);
        for (int k = 0; k <= total_k; ++k)
            for (int kp = 0; kp <= k; ++kp)
                next[static_cast<std::size_t>(k)] =
                    std::min(next[static_cast<std::size_t>(k)],
                             weight_add(per_tree[i][static_cast<std::size_t>(kp)],
                                        acc[static_cast<std::size_t>(k - kp)]));
        acc = std::move(next);
    }
    return acc[static_cast<std::size_t>(total_k)];
}

SolveResult solve_weighted_forest_delay(const WeightedForestDelayInstance& inst) {
    inst.validate();
    if (!red::is_forest(inst.g))
        throw std::invalid_argument("weighted delay solver requires a forest");

    auto [unfolded, receipt] = red::unfold_degree3(inst);
    std::vector<RootedTree> trees = RootedTree::build_forest(unfolded);

    std::vector<std::vector<Weight>> per_tree;
    std::int64_t table_cells = 0;
    for (const RootedTree& tree : trees) {
        DpTable table = compute_table(unfolded, tree);
        table_cells += static_cast<std::int64_t>(tree.vertices.size()) *
                       static_cast<std::int64_t>(table.axis().size()) * (inst.k + 1) * 2;
        std::vector<Weight> values;
        for (int k = 0; k <= inst.k; ++k) values.push_back(solve_tree(table, tree, k));
        per_tree.push_back(std::move(values));
    }
    Weight objective = combine_forest(per_tree, inst.k);

    SolveResult res;
    res.feasible = objective <= inst.r;
    res.objective = objective;
    res.stats["trees"] = static_cast<std::int64_t>(trees.size());
    res.stats["unfold_added_vertices"] = receipt.params.at("added_vertices");
    res.stats["table_cells"] = table_cells;
    return res;
}

SolveResult solve_delete_on_forest(const DeleteInstance& inst) {
    inst.validate();
    if (!red::is_forest(inst.g))
        throw std::invalid_argument("forest deletion solver requires a forest");

    auto [delay_inst, receipt] = red::delete_to_delay(inst);
    WeightedForestDelayInstance wf;
    wf.g = delay_inst.g;
    wf.w = WeightFn::uniform(delay_inst.g.vertex_count(), 1);
    wf.s = delay_inst.s;
    wf.k = delay_inst.k;
    wf.r = delay_inst.r;
    wf.delta = delay_inst.delta;

    SolveResult inner = solve_weighted_forest_delay(wf);
    const Weight added = static_cast<Weight>(receipt.params.at("added_vertices"));
    if (!inner.objective || *inner.objective < added)
        throw InternalError("reduced objective below the always-reached gadget weight");

    SolveResult res;
    res.feasible = inner.feasible;
    res.objective = *inner.objective - added;
    res.stats = inner.stats;
    res.stats["reduction_added_vertices"] = static_cast<std::int64_t>(added);
    return res;
}

}  // namespace minreach::forest
