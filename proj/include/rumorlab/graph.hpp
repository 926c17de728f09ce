#ifndef RUMORLAB_GRAPH_HPP
#define RUMORLAB_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rumorlab/rng.hpp"

namespace rumorlab {

enum class Family { KTree, KApollonian };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct CliqueRecord {
    std::vector<std::uint32_t> members; // sorted k-set
    std::uint64_t created_round = 0;    // 0 for the seed clique
    std::int64_t deactivated_round = -1; // -1 = still active (always, for k-trees)
    std::int64_t parent = -1;            // clique chosen at the creating step

    bool active_at(std::uint64_t round) const {
        return created_round <= round &&
               (deactivated_round < 0 ||
                static_cast<std::uint64_t>(deactivated_round) > round);
    }
};

// Evolving graph of the k-tree / k-Apollonian growth process. Vertex ids are
// birth indices: 0..k-1 are the seed clique, vertex k+t-1 is born in round t.
// Adjacency lists stay sorted because every newborn has the largest id.
struct EvolvingGraph {
    Family family = Family::KTree;
    std::uint32_t k = 2;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0; // recorded for serialization headers only

    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<CliqueRecord> cliques;
    std::vector<std::int64_t> birth_clique;      // -1 for seed vertices
    std::vector<std::uint64_t> vertex_clique_count; // cliques ever created containing v

    std::size_t vertex_count() const { return adj.size(); }
    std::uint64_t birth_round(std::uint32_t v) const {
        return v < k ? 0 : static_cast<std::uint64_t>(v) - k + 1;
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    std::uint32_t degree_of(std::uint32_t v) const;
    // Degree inside the round-m truncation G(m)/A(m).
    std::uint32_t degree_at_cut(std::uint32_t v, std::uint64_t m) const;
    std::map<std::uint32_t, std::uint64_t> degree_histogram() const;

    std::uint64_t cliques_containing(std::uint32_t v) const;
    std::uint64_t cliques_containing_edge(std::uint32_t u, std::uint32_t v,
                                          bool active_only) const;
};

EvolvingGraph generate_k_tree(std::uint32_t k, std::uint64_t steps, Rng& rng);
EvolvingGraph generate_k_apollonian(std::uint32_t k, std::uint64_t steps, Rng& rng);

// Growth primitives, exposed so conditioned processes (forced barriers) can
// drive the same machinery.
EvolvingGraph make_seed_graph(Family family, std::uint32_t k);
// Uniform over all cliques (k-tree) or all active cliques (k-Apollonian).
std::size_t choose_clique(const EvolvingGraph& g, Rng& rng);
// Joins a new vertex to cliques[clique_index]; returns the new vertex id.
std::uint32_t add_vertex(EvolvingGraph& g, std::size_t clique_index);

// Edge key helpers for per-edge clique-count maps (u != v).
inline std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}
// N(e) / N*(e) over the round-m truncation, for every edge of G(m)/A(m).
std::unordered_map<std::uint64_t, std::uint32_t>
edge_clique_counts(const EvolvingGraph& g, std::uint64_t m, bool active_only);

struct RecursiveTree {
    std::uint32_t d = 2;
    std::vector<std::uint32_t> parent; // parent[0] is unused (root)
    std::vector<std::uint32_t> depth;
    std::uint32_t height = 0;
};

RecursiveTree generate_recursive_tree(std::uint32_t d, std::uint64_t steps, Rng& rng);

// Text serialization: header "family k steps seed", one "u v" line per edge,
// then an optional "cliques" section. Deserialization replays the birth
// history from the edge list, so the round-trip is lossless.
std::string serialize_graph(const EvolvingGraph& g, bool with_cliques = true);
EvolvingGraph deserialize_graph(std::istream& in);
EvolvingGraph deserialize_graph(const std::string& text);

// Maximum-likelihood tail exponent of a degree sample. d_min is the smallest
// degree with at least min_obs observations at or above it in the histogram.
double tail_exponent_mle(const std::vector<std::uint32_t>& degrees,
                         std::uint64_t min_obs = 100);

} // namespace rumorlab

#endif
