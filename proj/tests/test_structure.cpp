#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include <doctest.h>

#include "rumorlab/graph.hpp"
#include "rumorlab/structure.hpp"

using namespace rumorlab;

namespace {

Adjacency complete_graph(std::uint32_t n) {
    Adjacency g(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v)
            if (u != v) g[u].push_back(v);
    return g;
}

Adjacency path_graph(std::uint32_t n) {
    Adjacency g(n);
    for (std::uint32_t v = 0; v + 1 < n; ++v) {
        g[v].push_back(v + 1);
        g[v + 1].push_back(v);
    }
    return g;
}

// independent oracle: all-sources BFS diameter
std::uint32_t brute_diameter(const Adjacency& g) {
    const std::size_t n = g.size();
    std::uint32_t best = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        std::vector<std::uint32_t> dist(n, kNeverInformed);
        std::queue<std::uint32_t> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const std::uint32_t v = q.front();
            q.pop();
            best = std::max(best, dist[v]);
            for (std::uint32_t w : g[v])
                if (dist[w] == kNeverInformed) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
        }
    }
    return best;
}

// independent oracle: expansion/conductance by recursive subset enumeration
// over std::set (deliberately different machinery from the library's bitmask
// scan)
struct BruteExpansion {
    Rational alpha{std::numeric_limits<int>::max()};
    Rational phi{std::numeric_limits<int>::max()};
};

BruteExpansion brute_expansion(const Adjacency& g) {
    const std::size_t n = g.size();
    std::uint64_t total_vol = 0;
    for (const auto& nb : g) total_vol += nb.size();
    BruteExpansion out;
    std::vector<std::uint32_t> subset;
    auto eval = [&]() {
        if (subset.empty()) return;
        std::set<std::uint32_t> s(subset.begin(), subset.end());
        std::set<std::uint32_t> boundary;
        std::uint64_t vol = 0, cut = 0;
        for (std::uint32_t v : subset) {
            vol += g[v].size();
            for (std::uint32_t w : g[v])
                if (!s.count(w)) {
                    ++cut;
                    boundary.insert(w);
                }
        }
        if (2 * subset.size() <= n)
            out.alpha = std::min(out.alpha,
                                 Rational(boundary.size(), subset.size()));
        if (vol > 0 && 2 * vol <= total_vol)
            out.phi = std::min(out.phi, Rational(cut, vol));
    };
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t next) {
        eval();
        for (std::uint32_t v = next; v < n; ++v) {
            subset.push_back(v);
            rec(v + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace

TEST_CASE("clustering coefficient") {
    CHECK(clustering_coefficient(complete_graph(3)) == Rational(1));
    CHECK(clustering_coefficient(complete_graph(5)) == Rational(1));
    CHECK_THROWS_AS(clustering_coefficient(path_graph(3)), std::invalid_argument);

    // evolving graphs: cc >= 1/2 deterministically, and the per-vertex
    // neighborhood edge identity 2|<N(u)>| = (k-1)(2 deg(u) - k) holds exactly
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        for (std::uint32_t k : {2u, 3u, 4u}) {
            Rng rng(mix_seed(101, seed, k));
            const auto g = k >= 3 && seed % 2 ? generate_k_apollonian(k, 80, rng)
                                              : generate_k_tree(k, 80, rng);
            CHECK(clustering_coefficient(g.adj) >= Rational(1, 2));
            if (g.family == Family::KTree) {
                for (std::uint32_t u = 0; u < g.adj.size(); ++u) {
                    const std::uint64_t d = g.adj[u].size();
                    CHECK(2 * neighborhood_edge_count(g.adj, u) ==
                          (g.k - 1) * (2 * d - g.k));
                }
            }
        }
    }
}

TEST_CASE("diameter") {
    CHECK(diameter(complete_graph(4)) == 1);
    CHECK(diameter(path_graph(3)) == 2);
    CHECK(diameter(path_graph(9)) == 8);
    Adjacency split(2);
    CHECK_THROWS(diameter(split));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(mix_seed(111, seed));
        const auto g = seed % 2 ? generate_k_apollonian(3, 30, rng)
                                : generate_k_tree(2, 30, rng);
        CHECK(diameter(g.adj) == brute_diameter(g.adj));
    }

    Rng rng(112);
    const auto g = generate_k_tree(2, 400, rng);
    const std::uint32_t exact = diameter(g.adj);
    Rng sample_rng(113);
    CHECK(eccentricity_sample(g.adj, 8, sample_rng) <= exact);
    CHECK(max_degree(g.adj) >= 2);
}

TEST_CASE("draft labels") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(mix_seed(121, seed));
        const auto g = generate_k_tree(3, 100, rng);
        const auto labels = draft_labels(g);
        for (std::uint32_t v = 0; v < g.k; ++v) CHECK(labels.vertex_draft[v] == 0);
        CHECK(labels.vertex_draft[g.k] == 1); // first newborn
        std::uint32_t seen_max = 0;
        for (std::uint32_t v = 0; v < g.adj.size(); ++v) {
            seen_max = std::max(seen_max, labels.vertex_draft[v]);
            // an edge's later endpoint is strictly deeper (seed vertices are
            // born together, so seed-seed edges are exempt)
            for (std::uint32_t u : g.adj[v])
                if (u < v && v >= g.k)
                    CHECK(labels.vertex_draft[v] >= labels.vertex_draft[u] + 1);
        }
        CHECK(labels.max_vertex_draft == seen_max);
        for (std::size_t c = 0; c < g.cliques.size(); ++c) {
            std::uint32_t mx = 0;
            for (std::uint32_t u : g.cliques[c].members)
                mx = std::max(mx, labels.vertex_draft[u]);
            CHECK(labels.clique_draft[c] == mx);
        }
    }
}

TEST_CASE("exact expansion on named graphs") {
    const auto k3 = exact_expansion(complete_graph(3));
    CHECK(k3.vertex_expansion == Rational(2));
    CHECK(k3.conductance == Rational(1));
    CHECK(k3.exact);
    // alpha minimizes over 0 < |S| <= n/2, so S any two vertices of K4 gives
    // boundary 2 over size 2
    const auto k4 = exact_expansion(complete_graph(4));
    CHECK(k4.vertex_expansion == Rational(1));
    CHECK_THROWS_AS(exact_expansion(Adjacency(25)), std::invalid_argument);
}

TEST_CASE("exact expansion agrees with an independent oracle") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(mix_seed(131, seed));
        const auto g = seed % 2 ? generate_k_apollonian(3, 5, rng)
                                : generate_k_tree(2, 7, rng);
        const auto report = exact_expansion(g.adj);
        const auto oracle = brute_expansion(g.adj);
        CHECK(report.vertex_expansion == oracle.alpha);
        CHECK(report.conductance == oracle.phi);

        // witnesses actually achieve the reported values
        {
            std::set<std::uint32_t> s(report.witness_set_alpha.begin(),
                                      report.witness_set_alpha.end());
            std::set<std::uint32_t> boundary;
            for (std::uint32_t v : s)
                for (std::uint32_t w : g.adj[v])
                    if (!s.count(w)) boundary.insert(w);
            CHECK(Rational(boundary.size(), s.size()) == report.vertex_expansion);
        }
    }
}

TEST_CASE("heuristic expansion gives certified upper bounds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(mix_seed(141, seed));
        const auto g = generate_k_tree(2, 100, rng);
        const auto h = heuristic_expansion(g);
        CHECK_FALSE(h.exact);
        CHECK(h.vertex_expansion <= Rational(3, 33));
        CHECK(h.conductance > Rational(0));
        // re-evaluate the alpha witness independently
        std::set<std::uint32_t> s(h.witness_set_alpha.begin(),
                                  h.witness_set_alpha.end());
        CHECK(2 * s.size() <= g.adj.size());
        std::set<std::uint32_t> boundary;
        for (std::uint32_t v : s)
            for (std::uint32_t w : g.adj[v])
                if (!s.count(w)) boundary.insert(w);
        CHECK(Rational(boundary.size(), s.size()) == h.vertex_expansion);
    }

    // on graphs small enough for both, heuristic >= exact (it is a bound)
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Rng rng(mix_seed(151, seed));
        const auto g = generate_k_tree(2, 15, rng);
        const auto e = exact_expansion(g.adj);
        const auto h = heuristic_expansion(g);
        CHECK(h.vertex_expansion >= e.vertex_expansion);
        CHECK(h.conductance >= e.conductance);
    }
}
