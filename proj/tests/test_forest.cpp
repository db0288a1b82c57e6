#include <doctest.h>

#include <map>
#include <set>

#include "minreach/forest.hpp"
#include "minreach/generators.hpp"
#include "minreach/oracle.hpp"
#include "minreach/reductions.hpp"

#include "support.hpp"

using namespace minreach;
namespace ft = minreach::forest;

namespace {

std::vector<ft::EdgeOccurrence> occ(std::initializer_list<ft::EdgeOccurrence> list) {
    return {list};
}

ft::EdgeOccurrence at(Time t, Time gamma = 1, bool locked = false) { return {t, gamma, locked}; }

}  // namespace

TEST_CASE("edge delay counts on single occurrences") {
    auto one = occ({at(3, 1)});
    CHECK(ft::compute_kappa(one, 2, 1, 4) == 0);  // undelayed arrival 4
    CHECK(ft::compute_kappa(one, 2, 1, 6) == 1);  // delayed arrival 3+2+1
    CHECK(ft::compute_kappa(one, 2, 1, 5) == ft::kImpossible);
    CHECK(ft::compute_kappa(one, 2, 5, kNever) == 0);  // unusable from t=5
    CHECK(ft::compute_kappa(one, 2, 1, kNever) == ft::kImpossible);

    // Locked occurrences cannot be delayed away.
    auto locked = occ({at(3, 1, true)});
    CHECK(ft::compute_kappa(locked, 2, 1, 6) == ft::kImpossible);
    CHECK(ft::compute_kappa(locked, 2, 1, 4) == 0);
}

TEST_CASE("edge delay counts pick the cheaper reshuffle") {
    // Delay the early occurrence out of the way, keep the later one.
    auto pair = occ({at(2, 1), at(5, 1)});
    CHECK(ft::compute_kappa(pair, 10, 1, 6) == 1);
    // Exact arrival via waking an occurrence that was too early to use.
    auto wake = occ({at(2, 1)});
    CHECK(ft::compute_kappa(wake, 3, 4, 6) == 1);  // 2+3 >= 4, arrival 6
}

TEST_CASE("bidirectional blocking counts") {
    CHECK(ft::compute_kappa_hat({}, 1, 0, kNever) == 0);
    auto one = occ({at(3, 1)});
    // Arrival 4 or 5: finite either way, so never-blocking is impossible.
    CHECK(ft::compute_kappa_hat(one, 1, 0, kNever) == ft::kImpossible);
    // Symmetric in its arguments.
    std::mt19937_64 rng(81001);
    for (int i = 0; i < 50; ++i) {
        auto edge = occ({at(1 + static_cast<Time>(rng() % 4), static_cast<Time>(rng() % 3)),
                         at(1 + static_cast<Time>(rng() % 4), static_cast<Time>(rng() % 3))});
        Time a = static_cast<Time>(rng() % 6), b = static_cast<Time>(rng() % 6);
        CHECK(ft::compute_kappa_hat(edge, 2, a, b) == ft::compute_kappa_hat(edge, 2, b, a));
    }
}

TEST_CASE("edge delay counts match subset enumeration on random configurations") {
    std::mt19937_64 rng(81002);
    std::vector<Time> candidates{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, kNever};
    int queries = 0;
    while (queries < 1200) {
        std::vector<ft::EdgeOccurrence> edge;
        const std::size_t count = rng() % 5;
        std::set<Time> used;
        for (std::size_t i = 0; i < count; ++i) {
            Time t = 1 + static_cast<Time>(rng() % 6);
            if (!used.insert(t).second) continue;
            edge.push_back(at(t, static_cast<Time>(rng() % 3), rng() % 4 == 0));
        }
        Time delta = 1 + static_cast<Time>(rng() % 3);
        Time a = candidates[rng() % candidates.size()];
        Time b = candidates[rng() % candidates.size()];
        CHECK(ft::compute_kappa(edge, delta, a, b) == test_support::kappa_oracle(edge, delta, a, b));
        CHECK(ft::compute_kappa_hat(edge, delta, a, b) ==
              test_support::kappa_hat_oracle(edge, delta, a, b));
        queries += 2;
    }
}

TEST_CASE("candidate time axis is closed under delays") {
    std::mt19937_64 rng(81003);
    gen::WForestOptions opt;
    opt.n_max = 6;
    for (int i = 0; i < 60; ++i) {
        WeightedForestDelayInstance inst = gen::random_wforest_instance(rng(), opt);
        ft::TimeAxis axis = ft::TimeAxis::for_edges(inst.g.edges(), inst.delta);
        // Any delay set realizes arrivals inside the axis only.
        std::vector<TimeEdgeKey> x;
        for (const TimeEdge& e : inst.g.edges())
            if (!inst.undelayable(e.key()) && rng() % 2) x.push_back(e.key());
        ArrivalMap m = earliest_arrival(apply_delay(inst.g, x, inst.delta), inst.s);
        for (VertexId v = 0; v < inst.g.vertex_count(); ++v) {
            Time t = m.at(v);
            CHECK(std::binary_search(axis.times.begin(), axis.times.end(), t));
        }
    }
}

TEST_CASE("rooting picks the smallest leaf and orients children") {
    // Path 2 - 0 - 1: the leaves are 1 and 2, so vertex 1 becomes the root.
    TemporalGraph g(3, {make_time_edge(0, 2, 1), make_time_edge(0, 1, 2)});
    WeightedForestDelayInstance inst{g, WeightFn::uniform(3, 1), {}, SourceSet::of({0}, 3), 0, 3, 1};
    auto trees = ft::RootedTree::build_forest(inst);
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].root == 1);
    CHECK(trees[0].children.at(1) == std::vector<VertexId>{0});
    CHECK(trees[0].children.at(0) == std::vector<VertexId>{2});
    CHECK(trees[0].postorder.back() == 1);
}

TEST_CASE("single-vertex tree table carries the base entries") {
    TemporalGraph g(1, {});
    WeightFn w = WeightFn::uniform(1, 9);
    WeightedForestDelayInstance inst{g, std::move(w), {}, SourceSet::of({0}, 1), 0, 100, 1};
    auto trees = ft::RootedTree::build_forest(inst);
    REQUIRE(trees.size() == 1);
    ft::DpTable table = ft::compute_table(inst, trees[0]);
    const std::size_t zero = table.axis().index_of(0);
    const std::size_t never = table.axis().index_of(kNever);
    CHECK(table.at(0, 0, zero, false) == 9);
    CHECK(table.at(0, 0, never, false) == kInfiniteWeight);  // sources sit at time 0
    CHECK(ft::solve_tree(table, trees[0], 0) == 9);
}

TEST_CASE("non-source leaves are unreachable from inside their own subtree") {
    TemporalGraph g(2, {make_time_edge(0, 1, 2)});
    WeightedForestDelayInstance inst{g, WeightFn::uniform(2, 1), {}, SourceSet::of({0}, 2), 1, 5, 1};
    auto trees = ft::RootedTree::build_forest(inst);
    ft::DpTable table = ft::compute_table(inst, trees[0]);
    REQUIRE(trees[0].root == 0);
    const auto& axis = table.axis();
    for (std::size_t ti = 0; ti < axis.size(); ++ti) {
        if (axis.at(ti) == kNever) {
            CHECK(table.at(1, 0, ti, false) == 0);
        } else {
            CHECK(table.at(1, 0, ti, false) == kInfiniteWeight);
            // Reached from outside at a finite time: its own weight.
            CHECK(table.at(1, 0, ti, true) == 1);
        }
    }
}

TEST_CASE("table entries never increase with more budget") {
    std::mt19937_64 rng(81004);
    gen::WForestOptions opt;
    opt.n_max = 6;
    for (int i = 0; i < 30; ++i) {
        WeightedForestDelayInstance inst = gen::random_wforest_instance(rng(), opt);
        auto [unfolded, receipt] = red::unfold_degree3(inst);
        for (const auto& tree : ft::RootedTree::build_forest(unfolded)) {
            ft::DpTable table = ft::compute_table(unfolded, tree);
            for (VertexId v : tree.vertices)
                for (std::size_t ti = 0; ti < table.axis().size(); ++ti)
                    for (int k = 0; k + 1 <= inst.k; ++k) {
                        CHECK(table.at(v, k + 1, ti, false) <= table.at(v, k, ti, false));
                        CHECK(table.at(v, k + 1, ti, true) <= table.at(v, k, ti, true));
                    }
        }
    }
}

TEST_CASE("a zero budget reproduces the plain reached weight") {
    std::mt19937_64 rng(81008);
    gen::WForestOptions opt;
    opt.n_max = 7;
    for (int i = 0; i < 25; ++i) {
        WeightedForestDelayInstance inst = gen::random_wforest_instance(rng(), opt);
        inst.k = 0;
        SolveResult dp = ft::solve_weighted_forest_delay(inst);
        auto reached = reachable_set(inst.g, inst.s);
        CHECK(*dp.objective == weight_of(inst.w, reached));
    }
}

TEST_CASE("budget split across trees") {
    std::vector<std::vector<Weight>> per_tree{{10, 4, 1}, {7, 3, 3}};
    CHECK(ft::combine_forest(per_tree, 0) == 17);
    CHECK(ft::combine_forest(per_tree, 1) == std::min<Weight>(4 + 7, 10 + 3));
    CHECK(ft::combine_forest(per_tree, 2) == 4 + 3);  // split 1 + 1 beats 2 + 0
    std::vector<std::vector<Weight>> single{{5, 2, 2}};
    CHECK(ft::combine_forest(single, 2) == 2);
}

TEST_CASE("zero weights are always feasible, locked edges pin the plain reach") {
    TemporalGraph g(3, {make_time_edge(0, 1, 1), make_time_edge(1, 2, 2)});
    WeightedForestDelayInstance zero{g, WeightFn::uniform(3, 0), {}, SourceSet::of({0}, 3), 1, 0, 1};
    SolveResult res = ft::solve_weighted_forest_delay(zero);
    CHECK(res.feasible);
    CHECK(*res.objective == 0);

    std::vector<TimeEdgeKey> all{{0, 1, 1}, {1, 2, 2}};
    WeightedForestDelayInstance locked{g, WeightFn::uniform(3, 1), all, SourceSet::of({0}, 3),
                                       2, 1, 1};
    SolveResult res2 = ft::solve_weighted_forest_delay(locked);
    CHECK(*res2.objective == 3);
    CHECK_FALSE(res2.feasible);
}

TEST_CASE("the tree program matches the exhaustive weighted oracle") {
    std::mt19937_64 rng(81005);
    gen::WForestOptions opt;
    for (int i = 0; i < 250; ++i) {
        WeightedForestDelayInstance inst = gen::random_wforest_instance(rng(), opt);
        SolveResult dp = ft::solve_weighted_forest_delay(inst);
        SolveResult ref = oracle::brute_weighted_forest(inst);
        REQUIRE_MESSAGE(*dp.objective == *ref.objective, "iteration ", i);
        CHECK(dp.feasible == ref.feasible);
    }
}

TEST_CASE("unit-weight tree solving agrees with the delay oracle") {
    std::mt19937_64 rng(81006);
    gen::WForestOptions opt;
    opt.n_max = 7;
    for (int i = 0; i < 60; ++i) {
        WeightedForestDelayInstance inst = gen::random_wforest_instance(rng(), opt);
        WeightedForestDelayInstance unit = inst;
        unit.w = WeightFn::uniform(inst.g.vertex_count(), 1);
        unit.f.clear();
        unit.r = std::max<std::uint64_t>(
            unit.s.size(), 1 + rng() % static_cast<std::uint64_t>(inst.g.vertex_count()));
        SolveResult dp = ft::solve_weighted_forest_delay(unit);
        DelayInstance plain{unit.g, unit.s, unit.k, static_cast<std::uint64_t>(unit.r), unit.delta};
        SolveResult ref = oracle::brute_delay(plain);
        REQUIRE(*dp.objective == *ref.objective);
        CHECK(dp.feasible == ref.feasible);
    }
}

TEST_CASE("deletion on forests: path example and oracle agreement") {
    // Path 0 - 1 - 2 with edges at t=1 and t=2: deleting the second edge
    // already meets r = 2, and deleting the first confines to the source.
    TemporalGraph g(3, {make_time_edge(0, 1, 1), make_time_edge(1, 2, 2)});
    DeleteInstance inst{g, SourceSet::of({0}, 3), 1, 2};
    SolveResult res = ft::solve_delete_on_forest(inst);
    CHECK(res.feasible);
    CHECK(*res.objective == 1);
    CHECK(*oracle::brute_delete(inst).objective == 1);

    // Edgeless forests are feasible exactly when the sources fit the bound.
    TemporalGraph empty(3, {});
    DeleteInstance e1{empty, SourceSet::of({0, 1}, 3), 0, 2};
    CHECK(ft::solve_delete_on_forest(e1).feasible);
    // Bounds below the source count violate the instance invariant.
    DeleteInstance e2{empty, SourceSet::of({0, 1}, 3), 5, 1};
    CHECK_THROWS_AS(ft::solve_delete_on_forest(e2), std::invalid_argument);

    std::mt19937_64 rng(81007);
    gen::WForestOptions opt;
    opt.n_max = 7;
    opt.labels_per_edge = 2;
    opt.k_max = 2;
    for (int i = 0; i < 60; ++i) {
        DeleteInstance rnd = gen::random_forest_delete_instance(rng(), opt);
        SolveResult dp = ft::solve_delete_on_forest(rnd);
        SolveResult ref = oracle::brute_delete(rnd);
        REQUIRE_MESSAGE(dp.feasible == ref.feasible, "iteration ", i);
        REQUIRE(*dp.objective == *ref.objective);
    }
}

TEST_CASE("forest solvers reject cyclic inputs") {
    TemporalGraph tri(3, {make_time_edge(0, 1, 1), make_time_edge(1, 2, 1), make_time_edge(0, 2, 1)});
    WeightedForestDelayInstance w{tri, WeightFn::uniform(3, 1), {}, SourceSet::of({0}, 3), 1, 3, 1};
    CHECK_THROWS_AS(ft::solve_weighted_forest_delay(w), std::invalid_argument);
    DeleteInstance d{tri, SourceSet::of({0}, 3), 1, 3};
    CHECK_THROWS_AS(ft::solve_delete_on_forest(d), std::invalid_argument);
}
