#include "minreach/generators.hpp"

#include <algorithm>
#include <numeric>

namespace minreach::gen {

namespace {

using Rng = std::mt19937_64;

// Distribution helpers with engine-defined (hence portable) sequences.
std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

bool coin(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return (static_cast<double>(rng() >> 11) * 0x1.0p-53) < p;
}

Time draw_gamma(Rng& rng, GammaChoice gc) {
    switch (gc) {
        case GammaChoice::One:
            return 1;
        case GammaChoice::ZeroOne:
            return static_cast<Time>(below(rng, 2));
        case GammaChoice::OneToThree:
            return 1 + static_cast<Time>(below(rng, 3));
    }
    return 1;
}

std::vector<std::pair<VertexId, VertexId>> pruefer_tree(VertexId n, Rng& rng) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (n < 2) return edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
        return edges;
    }
    std::vector<VertexId> seq(static_cast<std::size_t>(n - 2));
    for (auto& x : seq) x = static_cast<VertexId>(below(rng, static_cast<std::uint64_t>(n)));
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (VertexId x : seq) ++degree[static_cast<std::size_t>(x)];
    // Standard decoding: repeatedly attach the smallest leaf.
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (VertexId x : seq) {
        VertexId leaf = -1;
        for (VertexId v = 0; v < n; ++v)
            if (degree[static_cast<std::size_t>(v)] == 1 && !used[static_cast<std::size_t>(v)]) {
                leaf = v;
                break;
            }
        edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
        used[static_cast<std::size_t>(leaf)] = 1;
        --degree[static_cast<std::size_t>(x)];
    }
    std::vector<VertexId> last;
    for (VertexId v = 0; v < n; ++v)
        if (degree[static_cast<std::size_t>(v)] == 1 && !used[static_cast<std::size_t>(v)])
            last.push_back(v);
    edges.emplace_back(last[0], last[1]);
    return edges;
}

std::vector<TimeEdge> random_edges(Rng& rng, VertexId n, Time tau, int max_edges, GammaChoice gc) {
    std::vector<std::pair<std::pair<VertexId, VertexId>, Time>> slots;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            for (Time t = 1; t <= tau; ++t) slots.push_back({{u, v}, t});
    // Fisher-Yates prefix shuffle, then take the first m slots.
    const std::size_t m = static_cast<std::size_t>(below(
        rng, std::min<std::uint64_t>(static_cast<std::uint64_t>(max_edges), slots.size()) + 1));
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + static_cast<std::size_t>(below(rng, slots.size() - i));
        std::swap(slots[i], slots[j]);
    }
    std::vector<TimeEdge> edges;
    for (std::size_t i = 0; i < m; ++i)
        edges.push_back(make_time_edge(slots[i].first.first, slots[i].first.second, slots[i].second,
                                       draw_gamma(rng, gc)));
    return edges;
}

SourceSet random_sources(Rng& rng, VertexId n, int max_sources) {
    const std::size_t count =
        1 + static_cast<std::size_t>(below(rng, std::min<std::uint64_t>(
                                                    static_cast<std::uint64_t>(max_sources),
                                                    static_cast<std::uint64_t>(n))));
    std::vector<VertexId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(below(rng, all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return SourceSet::of(std::move(all), n);
}

struct CommonDraw {
    TemporalGraph g;
    SourceSet s;
    int k;
    std::uint64_t r;
    Time delta;
};

CommonDraw draw_common(Rng& rng, const CorpusOptions& opt) {
    const VertexId n =
        opt.n_min + static_cast<VertexId>(below(rng, static_cast<std::uint64_t>(opt.n_max - opt.n_min + 1)));
    const Time tau = 1 + static_cast<Time>(below(rng, static_cast<std::uint64_t>(opt.tau_max)));
    GammaChoice gc = opt.unit_gamma ? GammaChoice::One : opt.gamma;
    std::vector<TimeEdge> edges = random_edges(rng, n, tau, opt.max_edges, gc);
    TemporalGraph g(n, std::move(edges));
    SourceSet s = random_sources(rng, n, opt.max_sources);
    const std::uint64_t slack = static_cast<std::uint64_t>(n) - s.size();
    const std::uint64_t r = s.size() + below(rng, slack + 1);
    const int k = static_cast<int>(below(rng, static_cast<std::uint64_t>(opt.k_max) + 1));
    const Time delta = 1 + static_cast<Time>(below(rng, static_cast<std::uint64_t>(opt.delta_max)));
    return CommonDraw{std::move(g), std::move(s), k, r, delta};
}

}  // namespace

TemporalGraph generate_random(VertexId n, Time tau, double p, GammaChoice gamma, std::uint64_t seed) {
    if (n < 0 || tau < 1) throw std::invalid_argument("need n >= 0 and tau >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
    Rng rng(seed);
    std::vector<TimeEdge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            for (Time t = 1; t <= tau; ++t)
                if (coin(rng, p)) edges.push_back(make_time_edge(u, v, t, draw_gamma(rng, gamma)));
    return TemporalGraph(n, std::move(edges));
}

TemporalGraph generate_random_tree(VertexId n, Time tau, int edges_per_pair, std::uint64_t seed) {
    if (n < 1 || tau < 1 || edges_per_pair < 1)
        throw std::invalid_argument("need n >= 1, tau >= 1, edges_per_pair >= 1");
    Rng rng(seed);
    std::vector<TimeEdge> edges;
    for (const auto& [u, v] : pruefer_tree(n, rng)) {
        const Time cap = std::min<Time>(tau, edges_per_pair);
        const Time count = 1 + static_cast<Time>(below(rng, static_cast<std::uint64_t>(cap)));
        std::vector<Time> labels(static_cast<std::size_t>(tau));
        std::iota(labels.begin(), labels.end(), Time{1});
        for (Time i = 0; i < count; ++i) {
            std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(below(rng, labels.size() - static_cast<std::size_t>(i)));
            std::swap(labels[static_cast<std::size_t>(i)], labels[j]);
            edges.push_back(make_time_edge(u, v, labels[static_cast<std::size_t>(i)], 1));
        }
    }
    return TemporalGraph(n, std::move(edges));
}

DelayInstance random_delay_instance(std::uint64_t seed, const CorpusOptions& opt) {
    Rng rng(seed);
    CommonDraw d = draw_common(rng, opt);
    DelayInstance inst{std::move(d.g), std::move(d.s), d.k, d.r, d.delta};
    inst.validate();
    return inst;
}

SlowInstance random_slow_instance(std::uint64_t seed, const CorpusOptions& opt) {
    Rng rng(seed);
    CommonDraw d = draw_common(rng, opt);
    SlowInstance inst{std::move(d.g), std::move(d.s), d.k, d.r, d.delta};
    inst.validate();
    return inst;
}

DeleteInstance random_delete_instance(std::uint64_t seed, const CorpusOptions& opt) {
    CorpusOptions unit = opt;
    unit.unit_gamma = true;
    Rng rng(seed);
    CommonDraw d = draw_common(rng, unit);
    DeleteInstance inst{std::move(d.g), std::move(d.s), d.k, d.r};
    inst.validate();
    return inst;
}

namespace {

TemporalGraph random_forest_graph(Rng& rng, const WForestOptions& opt, VertexId& n_out) {
    const VertexId n = opt.n_min + static_cast<VertexId>(
                                       below(rng, static_cast<std::uint64_t>(opt.n_max - opt.n_min + 1)));
    n_out = n;
    const Time tau = 1 + static_cast<Time>(below(rng, static_cast<std::uint64_t>(opt.tau_max)));
    std::vector<TimeEdge> edges;
    for (const auto& [u, v] : pruefer_tree(n, rng)) {
        if (coin(rng, opt.drop_edge_prob)) continue;  // forestify
        const Time cap = std::min<Time>(tau, opt.labels_per_edge);
        const Time count = 1 + static_cast<Time>(below(rng, static_cast<std::uint64_t>(cap)));
        std::vector<Time> labels(static_cast<std::size_t>(tau));
        std::iota(labels.begin(), labels.end(), Time{1});
        for (Time i = 0; i < count; ++i) {
            std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(below(rng, labels.size() - static_cast<std::size_t>(i)));
            std::swap(labels[static_cast<std::size_t>(i)], labels[j]);
            Time gamma = static_cast<Time>(below(rng, 3));  // {0, 1, 2}
            edges.push_back(make_time_edge(u, v, labels[static_cast<std::size_t>(i)], gamma));
        }
    }
    return TemporalGraph(n, std::move(edges));
}

}  // namespace

WeightedForestDelayInstance random_wforest_instance(std::uint64_t seed, const WForestOptions& opt) {
    Rng rng(seed);
    VertexId n = 0;
    TemporalGraph g = random_forest_graph(rng, opt, n);

    WeightFn w = WeightFn::uniform(n, 1);
    std::uint64_t finite_total = 0;
    for (VertexId v = 0; v < n; ++v) {
        const std::uint64_t roll = below(rng, 10);
        Weight value;
        if (opt.infinite_weights && roll == 9)
            value = kInfiniteWeight;
        else if (roll < 2)
            value = 0;
        else if (roll < 7)
            value = 1 + below(rng, 2);
        else
            value = 3 + below(rng, 3);
        w.at(v) = value;
        if (value != kInfiniteWeight) finite_total += value;
    }

    std::vector<TimeEdgeKey> undelayable;
    for (const TimeEdge& e : g.edges())
        if (coin(rng, opt.undelayable_prob)) undelayable.push_back(e.key());
    std::sort(undelayable.begin(), undelayable.end());

    SourceSet s = random_sources(rng, n, 2);
    const int k = static_cast<int>(below(rng, static_cast<std::uint64_t>(opt.k_max) + 1));
    const Time delta = 1 + static_cast<Time>(below(rng, static_cast<std::uint64_t>(opt.delta_max)));
    const Weight r = below(rng, finite_total + 2);

    WeightedForestDelayInstance inst{std::move(g), std::move(w),        std::move(undelayable),
                                     std::move(s), k, r, delta};
    inst.validate();
    return inst;
}

DeleteInstance random_forest_delete_instance(std::uint64_t seed, const WForestOptions& opt) {
    Rng rng(seed);
    VertexId n = 0;
    TemporalGraph base = random_forest_graph(rng, opt, n);
    // Deletion corpora use unit traversal times.
    std::vector<TimeEdge> edges;
    for (const TimeEdge& e : base.edges()) edges.push_back(make_time_edge(e.u, e.v, e.t, 1));
    TemporalGraph g(n, std::move(edges));

    SourceSet s = random_sources(rng, n, 2);
    const std::uint64_t slack = static_cast<std::uint64_t>(n) - s.size();
    const std::uint64_t r = s.size() + below(rng, slack + 1);
    const int k = static_cast<int>(below(rng, static_cast<std::uint64_t>(opt.k_max) + 1));
    DeleteInstance inst{std::move(g), std::move(s), k, r};
    inst.validate();
    return inst;
}

}  // namespace minreach::gen
