#ifndef RUMORLAB_MACHINERY_HPP
#define RUMORLAB_MACHINERY_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rumorlab/graph.hpp"
#include "rumorlab/pushpull.hpp" // Adjacency
#include "rumorlab/rng.hpp"

namespace rumorlab {

// Spanning forest of the round-m truncation: each non-seed vertex x parents
// to the birth-clique member u maximizing the number of k-cliques (active
// k-cliques, for Apollonian graphs) of G(m) containing the edge xu. Ties go
// to the earliest-born candidate.
struct HighwayForest {
    std::vector<std::int64_t> parent; // per vertex of G(m); -1 for seeds
    std::vector<std::uint32_t> depth;
    std::vector<std::uint32_t> root_heights; // per seed vertex 0..k-1
    std::uint64_t m = 0;
    Family family = Family::KTree;
};

HighwayForest build_highway_forest(const EvolvingGraph& g, std::uint64_t m);

struct ForestViolation {
    std::uint32_t x = 0; // later-born endpoint
    std::uint32_t y = 0; // its forest parent
    std::uint64_t clique_count = 0;
};

// Checks the deterministic clique-count bound on forest edges xy whose
// later-born endpoint has degree > 2k-2 in the truncation: twice the
// (active) clique count of xy must reach k^2-k (k-trees) resp. (k-1)^2
// (Apollonian graphs). The returned list is empty when the bound holds.
std::vector<ForestViolation>
verify_forest_clique_bound(const EvolvingGraph& g, const HighwayForest& forest);

// An edge uv is fast iff deg(u) <= tau, deg(v) <= tau, or u and v have a
// common neighbor w with deg(w) <= tau. Degrees are in the full graph.
std::vector<char>
classify_fast_edges(const EvolvingGraph& g,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                    std::uint64_t tau);

struct PieceDecomposition {
    std::vector<std::int64_t> piece_of;        // -1 for traditional vertices
    std::vector<std::size_t> base_clique;      // registry index per piece
    std::vector<std::uint32_t> representative; // earliest-born base member
    std::vector<std::uint64_t> piece_sizes;    // modern vertices per piece
    std::uint64_t m = 0;
};

// Assigns every modern vertex to the unique piece whose base clique its
// birth ancestry passes through. Bases are the cliques of G(m) (all mk+1 of
// them) resp. the active cliques of A(m) (m(k-1)+1).
PieceDecomposition decompose_pieces(const EvolvingGraph& g, std::uint64_t m);

struct NiceClassification {
    std::vector<char> vertex_nice;
    std::vector<char> piece_nice;
    std::vector<std::uint32_t> sigma; // the nice modern vertices
};

// Traditional vertices are nice when their forest path to a seed consists of
// fast edges; a piece is nice when its representative is nice and all its
// modern vertices have degree <= tau; modern vertices inherit their piece's
// flag.
NiceClassification classify_nice(const EvolvingGraph& g, const HighwayForest& forest,
                                 const PieceDecomposition& pieces,
                                 std::uint64_t tau);

struct BarrierWitness {
    std::vector<std::uint32_t> clique1;
    std::vector<std::uint32_t> clique2;
    std::uint64_t s = 0; // min degree over both cliques
    bool cut_verified = false;
};

// Deletes the clique1-clique2 edges and checks connectivity. Returns a
// witness when the edges form a cut-set, nullopt otherwise. Throws when the
// inputs are not disjoint k-cliques.
std::optional<BarrierWitness> verify_barrier(const Adjacency& g,
                                             std::vector<std::uint32_t> clique1,
                                             std::vector<std::uint32_t> clique2);

// Searches the seed-pattern candidates (seed clique vs. first k newborns,
// globally and per piece at the lower-bound cut). Sound, not complete.
std::optional<BarrierWitness>
find_barrier(const EvolvingGraph& g, std::uint64_t s_min,
             std::optional<std::uint64_t> cut = std::nullopt);

// Random k-tree growth conditioned on the barrier-forcing seed event: the
// first k newborns attach in the ladder pattern and later births avoid the
// k^2-1 mixed seed cliques (by rejection, which samples the conditioned
// process exactly).
EvolvingGraph force_barrier(std::uint32_t k, std::uint64_t steps, Rng& rng);

// Parameter schedules. The slow function defaults to max(3, ln ln ln n).
struct Schedule {
    std::uint64_t m = 1;
    std::uint32_t q = 1;
    std::uint64_t tau = 1;
    double f = 3.0;
};

double default_slow_function(std::uint64_t n);
Schedule upper_bound_schedule(Family family, std::uint32_t k, std::uint64_t n,
                              double f_override = 0.0);
std::uint64_t lower_bound_cut(std::uint32_t k, std::uint64_t n,
                              double f_override = 0.0);

} // namespace rumorlab

#endif
