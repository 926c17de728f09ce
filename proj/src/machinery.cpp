#include "rumorlab/machinery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rumorlab {

namespace {

void check_cut(const EvolvingGraph& g, std::uint64_t m) {
    if (m < 1 || m > g.steps)
        throw std::out_of_range("machinery: cut round m out of range");
}

} // namespace

HighwayForest build_highway_forest(const EvolvingGraph& g, std::uint64_t m) {
    check_cut(g, m);
    const bool active_only = (g.family == Family::KApollonian);
    const auto counts = edge_clique_counts(g, m, active_only);

    HighwayForest forest;
    forest.m = m;
    forest.family = g.family;
    const std::uint64_t nm = g.k + m;
    forest.parent.assign(nm, -1);
    forest.depth.assign(nm, 0);
    forest.root_heights.assign(g.k, 0);

    for (std::uint32_t x = g.k; x < nm; ++x) {
        const auto& birth = g.cliques[static_cast<std::size_t>(g.birth_clique[x])];
        std::uint32_t best_u = birth.members.front();
        std::uint32_t best_count = 0;
        for (std::uint32_t u : birth.members) {
            const auto it = counts.find(edge_key(x, u));
            const std::uint32_t c = (it == counts.end()) ? 0 : it->second;
            if (c > best_count) { // earliest-born wins ties: members are sorted
                best_count = c;
                best_u = u;
            }
        }
        forest.parent[x] = best_u;
        forest.depth[x] = forest.depth[best_u] + 1; // parents are older
    }
    for (std::uint32_t x = g.k; x < nm; ++x) {
        std::uint32_t root = x;
        while (forest.parent[root] >= 0)
            root = static_cast<std::uint32_t>(forest.parent[root]);
        forest.root_heights[root] = std::max(forest.root_heights[root],
                                             forest.depth[x]);
    }
    return forest;
}

std::vector<ForestViolation>
verify_forest_clique_bound(const EvolvingGraph& g, const HighwayForest& forest) {
    const bool active_only = (g.family == Family::KApollonian);
    const auto counts = edge_clique_counts(g, forest.m, active_only);
    // Twice the required count, so half-integer Apollonian bounds stay exact.
    const std::uint64_t required2 =
        (g.family == Family::KTree)
            ? static_cast<std::uint64_t>(g.k) * g.k - g.k
            : static_cast<std::uint64_t>(g.k - 1) * (g.k - 1);

    std::vector<ForestViolation> violations;
    const std::uint64_t nm = g.k + forest.m;
    for (std::uint32_t x = g.k; x < nm; ++x) {
        if (g.degree_at_cut(x, forest.m) <= 2 * g.k - 2) continue;
        const auto y = static_cast<std::uint32_t>(forest.parent[x]);
        const auto it = counts.find(edge_key(x, y));
        const std::uint64_t c = (it == counts.end()) ? 0 : it->second;
        if (2 * c < required2) violations.push_back({x, y, c});
    }
    return violations;
}

std::vector<char>
classify_fast_edges(const EvolvingGraph& g,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                    std::uint64_t tau) {
    std::vector<char> fast(edges.size(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        if (!g.has_edge(u, v))
            throw std::invalid_argument("classify_fast_edges: not an edge");
        if (g.degree_of(u) <= tau || g.degree_of(v) <= tau) {
            fast[i] = 1;
            continue;
        }
        const auto& nu = g.adj[u];
        const auto& nv = g.adj[v];
        std::size_t a = 0, b = 0;
        while (a < nu.size() && b < nv.size()) {
            if (nu[a] < nv[b]) ++a;
            else if (nu[a] > nv[b]) ++b;
            else {
                if (g.adj[nu[a]].size() <= tau) { fast[i] = 1; break; }
                ++a; ++b;
            }
        }
    }
    return fast;
}

PieceDecomposition decompose_pieces(const EvolvingGraph& g, std::uint64_t m) {
    check_cut(g, m);
    PieceDecomposition out;
    out.m = m;
    const std::size_t nc = g.cliques.size();
    std::vector<std::int64_t> clique_piece(nc, -1);
    for (std::size_t c = 0; c < nc; ++c) {
        const auto& rec = g.cliques[c];
        if (rec.created_round > m) {
            // chosen after round m: inherits the piece of the clique it grew
            // from (parents always precede children in the registry)
            clique_piece[c] = clique_piece[static_cast<std::size_t>(rec.parent)];
            continue;
        }
        const bool is_base = (g.family == Family::KTree) || rec.active_at(m);
        if (!is_base) continue;
        clique_piece[c] = static_cast<std::int64_t>(out.base_clique.size());
        out.base_clique.push_back(c);
        out.representative.push_back(rec.members.front());
    }
    out.piece_sizes.assign(out.base_clique.size(), 0);
    out.piece_of.assign(g.vertex_count(), -1);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (g.birth_round(v) <= m) continue;
        const std::int64_t p =
            clique_piece[static_cast<std::size_t>(g.birth_clique[v])];
        out.piece_of[v] = p;
        ++out.piece_sizes[static_cast<std::size_t>(p)];
    }
    return out;
}

NiceClassification classify_nice(const EvolvingGraph& g, const HighwayForest& forest,
                                 const PieceDecomposition& pieces,
                                 std::uint64_t tau) {
    if (forest.m != pieces.m)
        throw std::invalid_argument("classify_nice: forest and pieces built at "
                                    "different cuts");
    const std::uint64_t nm = g.k + forest.m;
    NiceClassification out;
    out.vertex_nice.assign(g.vertex_count(), 0);

    // Traditional vertices: nice iff the forest path to a seed is all fast.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> forest_edges;
    forest_edges.reserve(nm - g.k);
    for (std::uint32_t x = g.k; x < nm; ++x)
        forest_edges.emplace_back(x, static_cast<std::uint32_t>(forest.parent[x]));
    const auto fast = classify_fast_edges(g, forest_edges, tau);
    for (std::uint32_t v = 0; v < g.k; ++v) out.vertex_nice[v] = 1;
    for (std::uint32_t x = g.k; x < nm; ++x) {
        const auto y = static_cast<std::uint32_t>(forest.parent[x]);
        out.vertex_nice[x] = fast[x - g.k] && out.vertex_nice[y];
    }

    out.piece_nice.assign(pieces.piece_sizes.size(), 0);
    for (std::size_t p = 0; p < out.piece_nice.size(); ++p)
        out.piece_nice[p] = out.vertex_nice[pieces.representative[p]];
    for (std::uint32_t v = static_cast<std::uint32_t>(nm); v < g.vertex_count(); ++v)
        if (g.degree_of(v) > tau)
            out.piece_nice[static_cast<std::size_t>(pieces.piece_of[v])] = 0;

    for (std::uint32_t v = static_cast<std::uint32_t>(nm); v < g.vertex_count(); ++v) {
        if (out.piece_nice[static_cast<std::size_t>(pieces.piece_of[v])]) {
            out.vertex_nice[v] = 1;
            out.sigma.push_back(v);
        }
    }
    return out;
}

std::optional<BarrierWitness> verify_barrier(const Adjacency& g,
                                             std::vector<std::uint32_t> clique1,
                                             std::vector<std::uint32_t> clique2) {
    auto check_clique = [&](const std::vector<std::uint32_t>& c) {
        if (c.empty()) throw std::invalid_argument("verify_barrier: empty clique");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= g.size())
                throw std::invalid_argument("verify_barrier: unknown vertex");
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                const auto& ni = g[c[i]];
                if (!std::binary_search(ni.begin(), ni.end(), c[j]))
                    throw std::invalid_argument("verify_barrier: input not a clique");
            }
        }
    };
    std::sort(clique1.begin(), clique1.end());
    std::sort(clique2.begin(), clique2.end());
    check_clique(clique1);
    check_clique(clique2);
    for (std::uint32_t v : clique1)
        if (std::binary_search(clique2.begin(), clique2.end(), v))
            throw std::invalid_argument("verify_barrier: cliques not disjoint");

    std::vector<char> in1(g.size(), 0), in2(g.size(), 0), seen(g.size(), 0);
    for (std::uint32_t v : clique1) in1[v] = 1;
    for (std::uint32_t v : clique2) in2[v] = 1;
    const auto crosses = [&](std::uint32_t u, std::uint32_t v) {
        return (in1[u] && in2[v]) || (in2[u] && in1[v]);
    };
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t v : g[u]) {
            if (!seen[v] && !crosses(u, v)) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    if (visited == g.size()) return std::nullopt;

    BarrierWitness w;
    w.clique1 = std::move(clique1);
    w.clique2 = std::move(clique2);
    w.cut_verified = true;
    w.s = g.size();
    for (std::uint32_t v : w.clique1) w.s = std::min<std::uint64_t>(w.s, g[v].size());
    for (std::uint32_t v : w.clique2) w.s = std::min<std::uint64_t>(w.s, g[v].size());
    return w;
}

std::optional<BarrierWitness>
find_barrier(const EvolvingGraph& g, std::uint64_t s_min,
             std::optional<std::uint64_t> cut) {
    const auto try_candidate =
        [&](std::vector<std::uint32_t> c1,
            std::vector<std::uint32_t> c2) -> std::optional<BarrierWitness> {
        for (std::size_t i = 0; i < c2.size(); ++i)
            for (std::size_t j = i + 1; j < c2.size(); ++j)
                if (!g.has_edge(c2[i], c2[j])) return std::nullopt;
        for (std::uint32_t u : c1)
            for (std::uint32_t v : c2)
                if (u == v) return std::nullopt;
        auto w = verify_barrier(g.adj, std::move(c1), std::move(c2));
        if (w && w->s >= s_min) return w;
        return std::nullopt;
    };

    // Global seed pattern: G(0) against the first k newborns.
    if (g.vertex_count() >= 2ull * g.k) {
        std::vector<std::uint32_t> seeds(g.k), first(g.k);
        for (std::uint32_t i = 0; i < g.k; ++i) {
            seeds[i] = i;
            first[i] = g.k + i;
        }
        if (auto w = try_candidate(seeds, first)) return w;
    }

    // Per-piece seed patterns at the lower-bound cut.
    const std::uint64_t m =
        cut ? *cut : std::min(g.steps, lower_bound_cut(g.k, g.steps));
    if (m < 1 || m >= g.steps) return std::nullopt;
    const auto pieces = decompose_pieces(g, m);
    std::vector<std::vector<std::uint32_t>> firstborn(pieces.piece_sizes.size());
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        const std::int64_t p = pieces.piece_of[v];
        if (p >= 0 && firstborn[static_cast<std::size_t>(p)].size() < g.k)
            firstborn[static_cast<std::size_t>(p)].push_back(v);
    }
    for (std::size_t p = 0; p < firstborn.size(); ++p) {
        if (firstborn[p].size() < g.k) continue;
        const auto& base = g.cliques[pieces.base_clique[p]];
        if (auto w = try_candidate(base.members, firstborn[p])) return w;
    }
    return std::nullopt;
}

EvolvingGraph force_barrier(std::uint32_t k, std::uint64_t steps, Rng& rng) {
    if (k < 2) throw std::invalid_argument("force_barrier: k must be >= 2");
    if (steps < k)
        throw std::invalid_argument("force_barrier: needs steps >= k");

    EvolvingGraph g = make_seed_graph(Family::KTree, k);
    // Ladder pattern: v_i attaches to {v_1,...,v_{i-1}, u_i,...,u_k}.
    for (std::uint32_t i = 1; i <= k; ++i) {
        std::vector<std::uint32_t> want;
        for (std::uint32_t j = 0; j < i - 1; ++j) want.push_back(k + j);
        for (std::uint32_t j = i - 1; j < k; ++j) want.push_back(j);
        std::sort(want.begin(), want.end());
        std::size_t idx = g.cliques.size();
        for (std::size_t c = 0; c < g.cliques.size(); ++c)
            if (g.cliques[c].members == want) { idx = c; break; }
        if (idx == g.cliques.size())
            throw std::logic_error("force_barrier: ladder clique missing");
        add_vertex(g, idx);
    }

    // Mixed seed cliques (containing both a u and a v) are forbidden forever;
    // there are k^2-1 of them among the k^2+1 cliques of G(k).
    std::vector<char> forbidden(g.cliques.size(), 0);
    std::size_t forbidden_count = 0;
    for (std::size_t c = 0; c < g.cliques.size(); ++c) {
        bool has_u = false, has_v = false;
        for (std::uint32_t v : g.cliques[c].members) {
            if (v < k) has_u = true;
            else if (v < 2 * k) has_v = true;
        }
        if (has_u && has_v) {
            forbidden[c] = 1;
            ++forbidden_count;
        }
    }
    if (forbidden_count != static_cast<std::size_t>(k) * k - 1)
        throw std::logic_error("force_barrier: unexpected forbidden-set size");

    for (std::uint64_t t = k; t < steps; ++t) {
        std::size_t idx;
        do {
            idx = choose_clique(g, rng);
        } while (idx < forbidden.size() && forbidden[idx]);
        add_vertex(g, idx);
    }
    return g;
}

double default_slow_function(std::uint64_t n) {
    const double x = std::log(std::log(std::log(std::max<double>(16.0, n))));
    return std::max(3.0, x);
}

Schedule upper_bound_schedule(Family family, std::uint32_t k, std::uint64_t n,
                              double f_override) {
    if (n < 2) throw std::invalid_argument("upper_bound_schedule: n too small");
    Schedule s;
    s.f = (f_override > 0.0) ? f_override : default_slow_function(n);
    const double logn = std::log(static_cast<double>(n));
    double m_real;
    double tau_exp;
    if (family == Family::KTree) {
        m_real = static_cast<double>(n) /
                 (std::pow(s.f, 3.0 / (k - 1)) * std::pow(logn, 2.0 / (k - 1)));
        tau_exp = 1.0 - 1.0 / k;
    } else {
        m_real = static_cast<double>(n) /
                 (std::pow(logn, 2.0 / (k - 1)) *
                  std::pow(s.f, (2.0 * k - 2.0) /
                                    (static_cast<double>(k) * k - 2.0 * k)));
        tau_exp = (k - 2.0) / (k - 1.0);
    }
    s.m = std::min<std::uint64_t>(
        n, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(m_real))));
    s.q = static_cast<std::uint32_t>(
        std::max(1.0, std::ceil(4.0 * std::log(std::max(2.0, std::log(
                                     std::max<double>(3.0, n)))))));
    const double ratio = static_cast<double>(n) / static_cast<double>(s.m);
    s.tau = static_cast<std::uint64_t>(
        std::ceil(2.0 * k + s.q * std::pow(ratio, tau_exp)));
    return s;
}

std::uint64_t lower_bound_cut(std::uint32_t k, std::uint64_t n, double f_override) {
    const double f = (f_override > 0.0) ? f_override : default_slow_function(n);
    const double kk = static_cast<double>(k);
    const double expo = 1.0 - kk / (kk * kk + kk - 1.0);
    const double m = f * std::pow(static_cast<double>(n), expo);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(m)));
}

} // namespace rumorlab
