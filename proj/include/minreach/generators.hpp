#pragma once

#include <cstdint>
#include <random>

#include "minreach/instance.hpp"

namespace minreach::gen {

enum class GammaChoice { One, ZeroOne, OneToThree };

/// Erdos-Renyi-style temporal graph: every (pair, layer) slot is included
/// independently with probability p. Bit-identical output for a fixed seed.
TemporalGraph generate_random(VertexId n, Time tau, double p, GammaChoice gamma, std::uint64_t seed);

/// Uniformly random labeled tree (by a random Pruefer sequence); every tree
/// edge carries 1..edges_per_pair distinct random time labels, unit
/// traversal times.
TemporalGraph generate_random_tree(VertexId n, Time tau, int edges_per_pair, std::uint64_t seed);

/// Knob set for the seeded instance corpora used by crosscheck and the
/// acceptance suite.
struct CorpusOptions {
    VertexId n_min = 2;
    VertexId n_max = 7;
    Time tau_max = 4;
    int max_edges = 12;
    int k_max = 3;
    Time delta_max = 3;
    int max_sources = 3;
    GammaChoice gamma = GammaChoice::ZeroOne;  // ZeroOne here means {0,1,2}
    bool unit_gamma = false;                   // force gamma = 1 (deletion corpora)
};

DelayInstance random_delay_instance(std::uint64_t seed, const CorpusOptions& opt);
SlowInstance random_slow_instance(std::uint64_t seed, const CorpusOptions& opt);
DeleteInstance random_delete_instance(std::uint64_t seed, const CorpusOptions& opt);

struct WForestOptions {
    VertexId n_min = 2;
    VertexId n_max = 9;
    Time tau_max = 4;
    int k_max = 3;
    Time delta_max = 3;
    int labels_per_edge = 3;
    bool infinite_weights = true;
    double drop_edge_prob = 0.25;   // tree edge removed entirely -> forest
    double undelayable_prob = 0.25;
};

WeightedForestDelayInstance random_wforest_instance(std::uint64_t seed, const WForestOptions& opt);

/// Unit-weight forest deletion instance (unit traversal times).
DeleteInstance random_forest_delete_instance(std::uint64_t seed, const WForestOptions& opt);

}  // namespace minreach::gen
