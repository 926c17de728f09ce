#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "rumorlab/graph.hpp"
#include "rumorlab/pushpull.hpp"

using namespace rumorlab;

namespace {

Adjacency path_graph(std::uint32_t n) {
    Adjacency g(n);
    for (std::uint32_t v = 0; v + 1 < n; ++v) {
        g[v].push_back(v + 1);
        g[v + 1].push_back(v);
    }
    return g;
}

Adjacency star_graph(std::uint32_t leaves) {
    Adjacency g(leaves + 1);
    for (std::uint32_t v = 1; v <= leaves; ++v) {
        g[0].push_back(v);
        g[v].push_back(0);
    }
    return g;
}

} // namespace

TEST_CASE("single edge completes in one round, always") {
    const Adjacency k2 = path_graph(2);
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng(seed);
        const auto t = run_push_pull(k2, 0, 10, rng);
        CHECK(t.completed);
        CHECK(t.rounds_executed == 1);
        CHECK(t.informed_at[1] == 1);
        CHECK(t.counts == std::vector<std::uint64_t>{1, 2});
    }
}

TEST_CASE("3-path from an end informs the far end in exactly round 2") {
    // the middle vertex is pushed in round 1; the far end has a single
    // neighbor, so its round-2 pull always succeeds
    const Adjacency p3 = path_graph(3);
    for (std::uint64_t seed = 0; seed < 256; ++seed) {
        Rng rng(seed);
        const auto t = run_push_pull(p3, 0, 10, rng);
        CHECK(t.informed_at[1] == 1);
        CHECK(t.informed_at[2] == 2);
        CHECK(t.rounds_executed == 2);
    }
}

TEST_CASE("star from the center completes in one round, always") {
    const Adjacency star = star_graph(6);
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng(seed);
        const auto t = run_push_pull(star, 0, 100, rng);
        CHECK(t.rounds_executed == 1);
        CHECK(t.counts.back() == 7);
    }
}

TEST_CASE("input validation") {
    Adjacency two_comps(4);
    two_comps[0] = {1};
    two_comps[1] = {0};
    two_comps[2] = {3};
    two_comps[3] = {2};
    Rng rng(1);
    CHECK_FALSE(is_connected(two_comps));
    CHECK_THROWS_AS(run_push_pull(two_comps, 0, 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(run_push_pull(path_graph(3), 7, 10, rng), std::invalid_argument);
    CHECK(is_connected(path_graph(5)));
}

TEST_CASE("trace invariants on evolving graphs") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Rng grow(mix_seed(61, seed));
        const auto g = generate_k_tree(2, 120, grow);
        Rng rng(mix_seed(62, seed));
        const auto t = run_push_pull(g.adj, 0, default_max_rounds(g.adj.size()), rng);
        REQUIRE(t.completed);
        CHECK(t.counts.front() == 1);
        CHECK(t.counts.back() == g.adj.size());
        for (std::size_t r = 1; r < t.counts.size(); ++r)
            CHECK(t.counts[r] >= t.counts[r - 1]);
        // edge locality: every informed vertex (except the start) has a
        // neighbor informed strictly earlier
        for (std::uint32_t v = 0; v < g.adj.size(); ++v) {
            if (v == t.start_vertex) {
                CHECK(t.informed_at[v] == 0);
                continue;
            }
            bool earlier = false;
            for (std::uint32_t u : g.adj[v])
                earlier |= t.informed_at[u] < t.informed_at[v];
            CHECK(earlier);
        }
    }
}

TEST_CASE("same seed gives identical traces") {
    Rng grow(71);
    const auto g = generate_k_apollonian(3, 80, grow);
    Rng r1(99), r2(99);
    const auto t1 = run_push_pull(g.adj, 5, 1000, r1);
    const auto t2 = run_push_pull(g.adj, 5, 1000, r2);
    CHECK(t1.informed_at == t2.informed_at);
    CHECK(t1.counts == t2.counts);
}

TEST_CASE("liveness: small connected graphs finish within 10 n ln n") {
    int completed = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        Rng grow(mix_seed(81, s));
        const auto g = s % 2 ? generate_k_apollonian(3, 40, grow)
                             : generate_k_tree(2, 40, grow);
        Rng rng(mix_seed(82, s));
        const auto t =
            run_push_pull(g.adj, 0, default_max_rounds(g.adj.size()), rng);
        completed += t.completed;
    }
    CHECK(completed >= static_cast<int>(0.99 * seeds));
}

TEST_CASE("ablation modes") {
    const Adjacency star = star_graph(5);
    Rng r1(3), r2(3);
    const auto pull = run_push_pull(star, 0, 1000, r1, SpreadMode::PullOnly);
    CHECK(pull.rounds_executed == 1); // every leaf pulls from the center
    const auto push = run_push_pull(star, 0, 1000, r2, SpreadMode::PushOnly);
    CHECK(push.completed);
    CHECK(push.rounds_executed >= 5); // the center pushes one leaf per round
}

TEST_CASE("rounds_to_fraction") {
    Rng rng(5);
    const auto t = run_push_pull(path_graph(3), 0, 10, rng);
    CHECK(rounds_to_fraction(t, 1.0) == 2);
    CHECK(rounds_to_fraction(t, 0.5) == 1); // ceil(1.5) = 2 informed at round 1
    CHECK(rounds_to_fraction(t, 0.1) == 0);
    Rng r2(5);
    const auto cut = run_push_pull(path_graph(30), 0, 1, r2);
    CHECK_FALSE(cut.completed);
    CHECK_FALSE(rounds_to_fraction(cut, 1.0).has_value());
}

TEST_CASE("path relay time") {
    Rng rng(9);
    CHECK(path_relay_time(path_graph(2), {0, 1}, rng) == 1);
    CHECK_THROWS_AS(path_relay_time(path_graph(4), {0, 2}, rng),
                    std::invalid_argument);

    // on an actual path graph, max degree tau = 2, so each hop advances with
    // probability >= 1/2 per round: mean <= 2 per hop, and the 6*tau*(len+ln n)
    // tail threshold is exceeded only rarely
    const std::uint32_t n = 11;
    const Adjacency p = path_graph(n);
    std::vector<std::uint32_t> path(n);
    for (std::uint32_t i = 0; i < n; ++i) path[i] = i;
    const double len = n - 1;
    const double threshold = 6.0 * 2.0 * (len + std::log(double(n)));
    double total = 0;
    int exceed = 0;
    const int trials = 2000;
    for (int s = 0; s < trials; ++s) {
        Rng r(mix_seed(91, s));
        const std::uint32_t rounds = path_relay_time(p, path, r);
        total += rounds;
        exceed += rounds > threshold;
    }
    CHECK(total / trials <= 2.0 * len * 1.2);
    CHECK(exceed <= trials / 100);
}

TEST_CASE("trace csv shape") {
    Rng rng(13);
    const auto t = run_push_pull(path_graph(3), 0, 10, rng);
    const std::string csv = trace_to_csv(t);
    CHECK(csv.find("round,informed") != std::string::npos);
    CHECK(csv.find("vertex,informed_at") != std::string::npos);
}
