#ifndef RUMORLAB_STRUCTURE_HPP
#define RUMORLAB_STRUCTURE_HPP

#include <cstdint>
#include <vector>

#include "rumorlab/graph.hpp"
#include "rumorlab/pushpull.hpp" // Adjacency
#include "rumorlab/rational.hpp"
#include "rumorlab/rng.hpp"

namespace rumorlab {

// Number of edges between neighbors of u.
std::uint64_t neighborhood_edge_count(const Adjacency& g, std::uint32_t u);

// Exact clustering coefficient; requires every vertex to have degree >= 2.
Rational clustering_coefficient(const Adjacency& g);

// Exact diameter (iFUB over BFS layerings; exact for any connected input,
// intended for |V| up to ~1e4). Throws on disconnected graphs.
std::uint32_t diameter(const Adjacency& g);

// Lower bound on the diameter from BFS eccentricities of sampled sources.
std::uint32_t eccentricity_sample(const Adjacency& g, std::size_t sources, Rng& rng);

std::uint32_t max_degree(const Adjacency& g);

struct DraftLabels {
    std::vector<std::uint32_t> vertex_draft;
    std::vector<std::uint32_t> clique_draft;
    std::uint32_t max_vertex_draft = 0;
};

// Inductive depth labels: seed vertices and the seed clique have draft 0,
// a newborn's draft is its birth clique's draft + 1, a clique's draft is the
// max over its members.
DraftLabels draft_labels(const EvolvingGraph& g);

struct ExpansionReport {
    Rational vertex_expansion;            // alpha(G) or an upper bound on it
    Rational conductance;                 // Phi(G) or an upper bound on it
    std::vector<std::uint32_t> witness_set_alpha;
    std::vector<std::uint32_t> witness_set_phi;
    bool exact = false;
};

// Exhaustive subset enumeration; |V| <= 24 enforced.
ExpansionReport exact_expansion(const Adjacency& g);

// Upper-bound witnesses from birth-structure clique separators: the clique
// whose grown subtree best balances the graph is removed and the smaller side
// is the witness set. Values are certified by direct evaluation on the
// witness; exact = false.
ExpansionReport heuristic_expansion(const EvolvingGraph& g);

// Checks that reverse birth order is a perfect elimination ordering, i.e.
// every vertex's older neighbors are pairwise adjacent.
bool is_perfect_elimination_reverse_birth(const EvolvingGraph& g);

} // namespace rumorlab

#endif
