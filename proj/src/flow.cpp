#include "minreach/flow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <set>

namespace minreach::flow {

namespace {

bool in_set(std::span<const VertexId> sorted, VertexId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

struct NodeKey {
    // Copy nodes first, ordered by (v, t); then gadget-in, gadget-out by
    // unit-edge position; the sink last.
    int rank;
    VertexId v;
    Time t;
    std::size_t gadget;

    friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

NodeKey key_of(const FlowNode& n) {
    switch (n.kind) {
        case FlowNode::Kind::Copy:
            return {0, n.v, n.t, 0};
        case FlowNode::Kind::GadgetIn:
            return {1, 0, 0, n.gadget};
        case FlowNode::Kind::GadgetOut:
            return {2, 0, 0, n.gadget};
        case FlowNode::Kind::Sink:
            return {3, 0, 0, 0};
    }
    return {3, 0, 0, 0};
}

}  // namespace

std::optional<int> FlowNetwork::find_copy(VertexId v, Time t) const {
    FlowNode probe{FlowNode::Kind::Copy, v, t, 0};
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), probe,
                               [](const FlowNode& a, const FlowNode& b) { return key_of(a) < key_of(b); });
    if (it != nodes_.end() && it->kind == FlowNode::Kind::Copy && it->v == v && it->t == t)
        return static_cast<int>(it - nodes_.begin());
    return std::nullopt;
}

std::optional<Time> FlowNetwork::exit_time(VertexId v) const {
    for (const Arc& a : arcs_) {
        if (a.to != sink_) continue;
        const FlowNode& from = node(a.from);
        if (from.v == v) return from.t;
    }
    return std::nullopt;
}

FlowNetwork build_flow_network(const TemporalGraph& g, VertexId s, std::span<const VertexId> r_set,
                               Time delta) {
    return build_flow_network(g, AdjacencyIndex::build(g), s, r_set, delta);
}

FlowNetwork build_flow_network(const TemporalGraph& g, const AdjacencyIndex& idx, VertexId s,
                               std::span<const VertexId> r_set, Time delta) {
    if (!in_set(r_set, s)) throw std::invalid_argument("flow network requires s in R");
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");

    FlowNetwork net;

    // Within-R time-edges define the gadgets.
    for (const TimeEdge& e : g.edges())
        if (in_set(r_set, e.u) && in_set(r_set, e.v)) net.unit_edges_.push_back(e);

    // Copy times: gadget endpoints, the exit time per rule (3), and 0 for s.
    std::map<VertexId, std::set<Time>> copy_times;
    copy_times[s].insert(0);
    for (const TimeEdge& e : net.unit_edges_) {
        for (VertexId v : {e.u, e.v}) {
            copy_times[v].insert(e.t);
            copy_times[v].insert(e.t + e.gamma);
            copy_times[v].insert(e.t + e.gamma + delta);
        }
    }
    std::map<VertexId, Time> exit_at;
    for (VertexId v : r_set) {
        Time best = -1;
        for (std::size_t ei : idx.incident[static_cast<std::size_t>(v)]) {
            const TimeEdge& e = g.edge_at(ei);
            VertexId other = e.u == v ? e.v : e.u;
            if (!in_set(r_set, other)) best = std::max(best, e.t);
        }
        if (best >= 0) {
            exit_at[v] = best;
            copy_times[v].insert(best);
        }
    }

    // Assign node ids in key order: copies by (v, t), then gadget nodes,
    // then the sink.
    std::map<std::pair<VertexId, Time>, int> copy_id;
    for (const auto& [v, times] : copy_times)
        for (Time t : times) {
            copy_id[{v, t}] = static_cast<int>(net.nodes_.size());
            net.nodes_.push_back(FlowNode{FlowNode::Kind::Copy, v, t, 0});
        }
    std::vector<int> gadget_in(net.unit_edges_.size()), gadget_out(net.unit_edges_.size());
    for (std::size_t i = 0; i < net.unit_edges_.size(); ++i) {
        gadget_in[i] = static_cast<int>(net.nodes_.size());
        net.nodes_.push_back(FlowNode{FlowNode::Kind::GadgetIn, -1, 0, i});
    }
    for (std::size_t i = 0; i < net.unit_edges_.size(); ++i) {
        gadget_out[i] = static_cast<int>(net.nodes_.size());
        net.nodes_.push_back(FlowNode{FlowNode::Kind::GadgetOut, -1, 0, i});
    }
    net.sink_ = static_cast<int>(net.nodes_.size());
    net.nodes_.push_back(FlowNode{FlowNode::Kind::Sink, -1, 0, 0});
    net.source_ = copy_id.at({s, 0});

    // Arc set (1): chain consecutive copies of each vertex.
    for (const auto& [v, times] : copy_times) {
        Time prev = -1;
        bool have_prev = false;
        for (Time t : times) {
            if (have_prev)
                net.arcs_.push_back(Arc{copy_id.at({v, prev}), copy_id.at({v, t}), kInfiniteCapacity, {}});
            prev = t;
            have_prev = true;
        }
    }
    // Arc set (2): the gadgets, with the unit arc between the two gadget nodes.
    for (std::size_t i = 0; i < net.unit_edges_.size(); ++i) {
        const TimeEdge& e = net.unit_edges_[i];
        int ut = copy_id.at({e.u, e.t});
        int vt = copy_id.at({e.v, e.t});
        int u_arr = copy_id.at({e.u, e.t + e.gamma});
        int v_arr = copy_id.at({e.v, e.t + e.gamma});
        int u_late = copy_id.at({e.u, e.t + e.gamma + delta});
        int v_late = copy_id.at({e.v, e.t + e.gamma + delta});
        net.arcs_.push_back(Arc{ut, gadget_in[i], kInfiniteCapacity, {}});
        net.arcs_.push_back(Arc{vt, gadget_in[i], kInfiniteCapacity, {}});
        net.arcs_.push_back(Arc{gadget_in[i], gadget_out[i], 1, e.key()});
        net.arcs_.push_back(Arc{gadget_out[i], u_arr, kInfiniteCapacity, {}});
        net.arcs_.push_back(Arc{gadget_out[i], v_arr, kInfiniteCapacity, {}});
        net.arcs_.push_back(Arc{ut, v_late, kInfiniteCapacity, {}});
        net.arcs_.push_back(Arc{vt, u_late, kInfiniteCapacity, {}});
    }
    // Arc set (3): exit arcs into the sink.
    for (const auto& [v, t] : exit_at)
        net.arcs_.push_back(Arc{copy_id.at({v, t}), net.sink_, kInfiniteCapacity, {}});

    std::sort(net.arcs_.begin(), net.arcs_.end(), [](const Arc& a, const Arc& b) {
        if (a.from != b.from) return a.from < b.from;
        return a.to < b.to;
    });

    // Residual adjacency and per-copy shortcuts.
    net.radj_.resize(net.nodes_.size());
    net.chain_arc_.assign(net.nodes_.size(), -1);
    net.sink_arc_.assign(net.nodes_.size(), -1);
    for (std::size_t i = 0; i < net.arcs_.size(); ++i) {
        const Arc& a = net.arcs_[i];
        net.radj_[static_cast<std::size_t>(a.from)].push_back({a.to, static_cast<int>(i), false});
        net.radj_[static_cast<std::size_t>(a.to)].push_back({a.from, static_cast<int>(i), true});
        const FlowNode& from = net.node(a.from);
        if (from.kind == FlowNode::Kind::Copy) {
            const FlowNode& to = net.node(a.to);
            if (to.kind == FlowNode::Kind::Copy && to.v == from.v)
                net.chain_arc_[static_cast<std::size_t>(a.from)] = static_cast<int>(i);
            if (to.kind == FlowNode::Kind::Sink)
                net.sink_arc_[static_cast<std::size_t>(a.from)] = static_cast<int>(i);
        }
    }
    for (auto& entries : net.radj_)
        std::sort(entries.begin(), entries.end(), [](const FlowNetwork::AdjEntry& a, const FlowNetwork::AdjEntry& b) {
            if (a.neighbor != b.neighbor) return a.neighbor < b.neighbor;
            if (a.reverse != b.reverse) return !a.reverse;
            return a.arc < b.arc;
        });
    return net;
}

namespace {

Capacity residual(const FlowNetwork& net, const FlowAssignment& f, const FlowNetwork::AdjEntry& e) {
    const Arc& a = net.arcs()[static_cast<std::size_t>(e.arc)];
    if (e.reverse) return f.flow[static_cast<std::size_t>(e.arc)];
    if (a.cap == kInfiniteCapacity) return kInfiniteCapacity;
    return a.cap - f.flow[static_cast<std::size_t>(e.arc)];
}

/// Breadth-first search in the residual graph; fills parent entries.
bool residual_bfs(const FlowNetwork& net, const FlowAssignment& f,
                  std::vector<std::optional<FlowNetwork::AdjEntry>>& parent,
                  std::vector<int>& parent_node) {
    std::fill(parent.begin(), parent.end(), std::nullopt);
    std::fill(parent_node.begin(), parent_node.end(), -1);
    std::deque<int> queue;
    queue.push_back(net.source());
    parent_node[static_cast<std::size_t>(net.source())] = net.source();
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& e : net.residual_adjacency(u)) {
            if (parent_node[static_cast<std::size_t>(e.neighbor)] != -1) continue;
            if (residual(net, f, e) <= 0) continue;
            parent_node[static_cast<std::size_t>(e.neighbor)] = u;
            parent[static_cast<std::size_t>(e.neighbor)] = e;
            if (e.neighbor == net.sink()) return true;
            queue.push_back(e.neighbor);
        }
    }
    return parent_node[static_cast<std::size_t>(net.sink())] != -1;
}

}  // namespace

FlowAssignment bounded_max_flow(const FlowNetwork& net, std::uint64_t bound) {
    FlowAssignment f;
    f.flow.assign(net.arcs().size(), 0);
    const std::size_t nn = static_cast<std::size_t>(net.node_count());
    std::vector<std::optional<FlowNetwork::AdjEntry>> parent(nn);
    std::vector<int> parent_node(nn, -1);

    while (residual_bfs(net, f, parent, parent_node)) {
        Capacity bottleneck = kInfiniteCapacity;
        for (int v = net.sink(); v != net.source(); v = parent_node[static_cast<std::size_t>(v)]) {
            Capacity r = residual(net, f, *parent[static_cast<std::size_t>(v)]);
            bottleneck = std::min(bottleneck, r);
        }
        const std::uint64_t headroom = bound + 1 - f.value;
        std::uint64_t push;
        if (bottleneck == kInfiniteCapacity) {
            push = headroom;  // enough to exceed the bound outright
        } else {
            push = std::min<std::uint64_t>(static_cast<std::uint64_t>(bottleneck), headroom);
        }
        for (int v = net.sink(); v != net.source(); v = parent_node[static_cast<std::size_t>(v)]) {
            const auto& e = *parent[static_cast<std::size_t>(v)];
            f.flow[static_cast<std::size_t>(e.arc)] += e.reverse ? -static_cast<std::int64_t>(push)
                                                                 : static_cast<std::int64_t>(push);
        }
        f.value += push;
        if (f.value > bound) {
            f.exceeds_bound = true;
            return f;  // value is exactly bound + 1
        }
    }
    return f;
}

std::vector<TimeEdgeKey> min_cut_timeedges(const FlowNetwork& net, const FlowAssignment& f) {
    if (f.exceeds_bound)
        throw std::invalid_argument("min cut requires a maximum flow, not a bound-exceeding one");
    // Residual-reachable side of the source.
    std::vector<char> reachable(static_cast<std::size_t>(net.node_count()), 0);
    std::deque<int> queue{net.source()};
    reachable[static_cast<std::size_t>(net.source())] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& e : net.residual_adjacency(u)) {
            if (reachable[static_cast<std::size_t>(e.neighbor)]) continue;
            if (residual(net, f, e) <= 0) continue;
            reachable[static_cast<std::size_t>(e.neighbor)] = 1;
            queue.push_back(e.neighbor);
        }
    }
    std::vector<TimeEdgeKey> cut;
    for (const Arc& a : net.arcs()) {
        if (!a.edge) continue;
        if (reachable[static_cast<std::size_t>(a.from)] && !reachable[static_cast<std::size_t>(a.to)])
            cut.push_back(*a.edge);
    }
    std::sort(cut.begin(), cut.end());
    if (cut.size() != f.value)
        throw InternalError("min cut size does not match the flow value");
    return cut;
}

namespace {

/// Cancels cycles in the positive-flow support so path peeling terminates.
void cancel_flow_cycles(const FlowNetwork& net, std::vector<std::int64_t>& flow) {
    const std::size_t nn = static_cast<std::size_t>(net.node_count());
    // Positive out-arcs per node, ascending arc index.
    auto positive_out = [&](int u) {
        std::vector<int> out;
        for (const auto& e : net.residual_adjacency(u))
            if (!e.reverse && flow[static_cast<std::size_t>(e.arc)] > 0) out.push_back(e.arc);
        return out;
    };
    bool found = true;
    while (found) {
        found = false;
        std::vector<int> state(nn, 0);  // 0 white, 1 gray, 2 black
        std::vector<int> via_arc(nn, -1);
        std::vector<int> pred(nn, -1);
        for (int start = 0; start < net.node_count() && !found; ++start) {
            if (state[static_cast<std::size_t>(start)] != 0) continue;
            // Iterative DFS over the positive-flow support.
            std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
            state[static_cast<std::size_t>(start)] = 1;
            while (!stack.empty() && !found) {
                auto& [u, next] = stack.back();
                std::vector<int> out = positive_out(u);
                if (next >= out.size()) {
                    state[static_cast<std::size_t>(u)] = 2;
                    stack.pop_back();
                    continue;
                }
                int arc = out[next++];
                int w = net.arcs()[static_cast<std::size_t>(arc)].to;
                if (state[static_cast<std::size_t>(w)] == 1) {
                    // Extract the cycle w -> ... -> u -> w and reduce it.
                    std::vector<int> cycle_arcs{arc};
                    for (int x = u; x != w; x = pred[static_cast<std::size_t>(x)])
                        cycle_arcs.push_back(via_arc[static_cast<std::size_t>(x)]);
                    std::int64_t m = std::numeric_limits<std::int64_t>::max();
                    for (int a : cycle_arcs) m = std::min(m, flow[static_cast<std::size_t>(a)]);
                    for (int a : cycle_arcs) flow[static_cast<std::size_t>(a)] -= m;
                    found = true;
                } else if (state[static_cast<std::size_t>(w)] == 0) {
                    state[static_cast<std::size_t>(w)] = 1;
                    pred[static_cast<std::size_t>(w)] = u;
                    via_arc[static_cast<std::size_t>(w)] = arc;
                    stack.emplace_back(w, 0);
                }
            }
        }
    }
}

}  // namespace

std::vector<std::pair<VertexId, Time>> escape_pairs(const FlowNetwork& net, const FlowAssignment& f) {
    if (!f.exceeds_bound)
        throw std::invalid_argument("escape pairs require a flow of full value (bound + 1)");

    std::vector<std::int64_t> flow = f.flow;
    cancel_flow_cycles(net, flow);

    // Peel one unit path per flow unit, following the smallest positive arc.
    std::vector<std::vector<int>> paths;  // arc index sequences
    for (std::uint64_t unit = 0; unit < f.value; ++unit) {
        std::vector<int> path;
        int cur = net.source();
        std::size_t guard = 0;
        while (cur != net.sink()) {
            if (++guard > net.arcs().size() + 1)
                throw InternalError("flow decomposition did not reach the sink");
            int chosen = -1;
            for (const auto& e : net.residual_adjacency(cur)) {
                if (e.reverse || flow[static_cast<std::size_t>(e.arc)] <= 0) continue;
                chosen = e.arc;
                break;
            }
            if (chosen < 0) throw InternalError("flow conservation violated during peeling");
            flow[static_cast<std::size_t>(chosen)] -= 1;
            path.push_back(chosen);
            cur = net.arcs()[static_cast<std::size_t>(chosen)].to;
        }
        paths.push_back(std::move(path));
    }

    // Reroute: if a path would leave v^t through a gadget or delay arc while
    // an exit arc (v^b, z) with b >= t exists, send it along chain arcs to
    // v^b and into z instead. Chain and exit arcs have infinite capacity, so
    // this is always possible.
    for (auto& path : paths) {
        for (std::size_t i = 0; i < path.size(); ++i) {
            const Arc& a = net.arcs()[static_cast<std::size_t>(path[i])];
            const FlowNode& from = net.node(a.from);
            if (from.kind != FlowNode::Kind::Copy) continue;
            const FlowNode& to = net.node(a.to);
            const bool chain_step = to.kind == FlowNode::Kind::Copy && to.v == from.v;
            const bool exit_step = to.kind == FlowNode::Kind::Sink;
            if (chain_step || exit_step) continue;
            std::optional<Time> b = net.exit_time(from.v);
            if (!b || *b < from.t) continue;
            path.resize(i);
            int cur = *net.find_copy(from.v, from.t);
            while (net.node(cur).t != *b) {
                int arc = net.chain_arc(cur);
                if (arc < 0) throw InternalError("missing chain arc while rerouting");
                path.push_back(arc);
                cur = net.arcs()[static_cast<std::size_t>(arc)].to;
            }
            int za = net.sink_arc(cur);
            if (za < 0) throw InternalError("missing exit arc while rerouting");
            path.push_back(za);
            break;
        }
    }

    // Rebuild the normalized flow and read off the exit pairs.
    std::vector<std::int64_t> normalized(net.arcs().size(), 0);
    for (const auto& path : paths)
        for (int a : path) normalized[static_cast<std::size_t>(a)] += 1;
    std::set<std::pair<VertexId, Time>> h;
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
        const Arc& a = net.arcs()[i];
        if (a.to != net.sink() || normalized[i] <= 0) continue;
        const FlowNode& from = net.node(a.from);
        h.emplace(from.v, from.t);
    }
    return {h.begin(), h.end()};
}

std::vector<VertexId> branching_set(const TemporalGraph& g, std::span<const VertexId> r_set,
                                    std::span<const std::pair<VertexId, Time>> h) {
    return branching_set(g, AdjacencyIndex::build(g), r_set, h);
}

std::vector<VertexId> branching_set(const TemporalGraph& g, const AdjacencyIndex& idx,
                                    std::span<const VertexId> r_set,
                                    std::span<const std::pair<VertexId, Time>> h) {
    std::set<VertexId> y;
    for (const auto& [v, t] : h) {
        VertexId picked = -1;
        for (std::size_t ei : idx.incident[static_cast<std::size_t>(v)]) {
            const TimeEdge& e = g.edge_at(ei);
            if (e.t < t) continue;
            VertexId other = e.u == v ? e.v : e.u;
            if (!in_set(r_set, other) && (picked < 0 || other < picked)) picked = other;
        }
        if (picked < 0)
            throw InternalError("escape pair has no neighbor outside R; gadget construction bug");
        y.insert(picked);
    }
    return {y.begin(), y.end()};
}

namespace {

std::string node_label(const FlowNetwork& net, int id) {
    const FlowNode& n = net.node(id);
    switch (n.kind) {
        case FlowNode::Kind::Copy:
            return "v" + std::to_string(n.v) + "@" + std::to_string(n.t);
        case FlowNode::Kind::GadgetIn:
        case FlowNode::Kind::GadgetOut: {
            const TimeEdge& e = net.unit_edges()[n.gadget];
            std::string base = "e" + std::to_string(e.u) + "-" + std::to_string(e.v) + "@" +
                               std::to_string(e.t);
            return base + (n.kind == FlowNode::Kind::GadgetIn ? ".in" : ".out");
        }
        case FlowNode::Kind::Sink:
            return "z";
    }
    return "?";
}

}  // namespace

void dump(const FlowNetwork& net, std::ostream& os) {
    for (const Arc& a : net.arcs()) {
        os << node_label(net, a.from) << ' ' << node_label(net, a.to) << ' ';
        if (a.cap == kInfiniteCapacity)
            os << "inf";
        else
            os << a.cap;
        os << '\n';
    }
}

}  // namespace minreach::flow
