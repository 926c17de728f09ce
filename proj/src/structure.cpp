#include "rumorlab/structure.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace rumorlab {

namespace {

std::vector<std::uint32_t> bfs_distances(const Adjacency& g, std::uint32_t src) {
    std::vector<std::uint32_t> dist(g.size(), kNeverInformed);
    std::vector<std::uint32_t> queue{src};
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        for (std::uint32_t v : g[u]) {
            if (dist[v] == kNeverInformed) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::uint32_t eccentricity(const Adjacency& g, std::uint32_t src,
                           std::uint32_t* farthest = nullptr) {
    const auto dist = bfs_distances(g, src);
    std::uint32_t ecc = 0, arg = src;
    for (std::uint32_t v = 0; v < dist.size(); ++v) {
        if (dist[v] == kNeverInformed)
            throw std::invalid_argument("diameter: graph is disconnected");
        if (dist[v] > ecc) { ecc = dist[v]; arg = v; }
    }
    if (farthest) *farthest = arg;
    return ecc;
}

} // namespace

std::uint64_t neighborhood_edge_count(const Adjacency& g, std::uint32_t u) {
    if (u >= g.size())
        throw std::out_of_range("neighborhood_edge_count: unknown vertex");
    std::uint64_t twice = 0;
    const auto& nu = g[u];
    for (std::uint32_t v : nu) {
        const auto& nv = g[v];
        // both lists are sorted; count |N(u) ∩ N(v)|
        std::size_t i = 0, j = 0;
        while (i < nu.size() && j < nv.size()) {
            if (nu[i] < nv[j]) ++i;
            else if (nu[i] > nv[j]) ++j;
            else { ++twice; ++i; ++j; }
        }
    }
    return twice / 2;
}

Rational clustering_coefficient(const Adjacency& g) {
    if (g.empty())
        throw std::invalid_argument("clustering_coefficient: empty graph");
    Rational sum(0);
    for (std::uint32_t u = 0; u < g.size(); ++u) {
        const std::uint64_t d = g[u].size();
        if (d < 2)
            throw std::invalid_argument(
                "clustering_coefficient: vertex of degree < 2");
        const BigInt pairs = BigInt(d) * (d - 1) / 2;
        sum += Rational(BigInt(neighborhood_edge_count(g, u)), pairs);
    }
    return sum / BigInt(g.size());
}

std::uint32_t diameter(const Adjacency& g) {
    if (g.empty()) return 0;
    // iFUB: double sweep for a lower bound, then refute larger values by
    // scanning BFS levels of a middle root top-down.
    std::uint32_t a = 0;
    eccentricity(g, 0, &a);
    const auto dist_a = bfs_distances(g, a);
    std::uint32_t b = a, lb = 0;
    for (std::uint32_t v = 0; v < dist_a.size(); ++v)
        if (dist_a[v] > lb) { lb = dist_a[v]; b = v; }
    // middle vertex of an (a,b) shortest path
    const auto dist_b = bfs_distances(g, b);
    std::uint32_t root = a;
    for (std::uint32_t v = 0; v < g.size(); ++v)
        if (dist_a[v] + dist_b[v] == lb && dist_a[v] == lb / 2) { root = v; break; }

    const auto dist_r = bfs_distances(g, root);
    std::uint32_t ecc_r = 0;
    for (std::uint32_t d : dist_r) ecc_r = std::max(ecc_r, d);
    lb = std::max(lb, ecc_r);

    std::vector<std::vector<std::uint32_t>> levels(ecc_r + 1);
    for (std::uint32_t v = 0; v < g.size(); ++v) levels[dist_r[v]].push_back(v);
    for (std::uint32_t i = ecc_r; i > 0; --i) {
        if (2 * i <= lb) break;
        for (std::uint32_t v : levels[i])
            lb = std::max(lb, eccentricity(g, v));
    }
    return lb;
}

std::uint32_t eccentricity_sample(const Adjacency& g, std::size_t sources, Rng& rng) {
    if (g.empty()) return 0;
    std::uint32_t best = 0;
    for (std::size_t s = 0; s < sources; ++s) {
        const auto src = static_cast<std::uint32_t>(rng.next_below(g.size()));
        best = std::max(best, eccentricity(g, src));
    }
    return best;
}

std::uint32_t max_degree(const Adjacency& g) {
    std::size_t d = 0;
    for (const auto& nv : g) d = std::max(d, nv.size());
    return static_cast<std::uint32_t>(d);
}

DraftLabels draft_labels(const EvolvingGraph& g) {
    if (g.cliques.empty())
        throw std::invalid_argument("draft_labels: clique registry missing");
    DraftLabels out;
    out.vertex_draft.assign(g.vertex_count(), 0);
    out.clique_draft.assign(g.cliques.size(), 0);
    // Vertices and cliques are created in birth order, so one forward pass
    // over cliques sees parents before children.
    for (std::size_t c = 1; c < g.cliques.size(); ++c) {
        const auto& rec = g.cliques[c];
        const auto newborn =
            static_cast<std::uint32_t>(g.k + rec.created_round - 1);
        const auto parent = static_cast<std::size_t>(rec.parent);
        out.vertex_draft[newborn] = out.clique_draft[parent] + 1;
        std::uint32_t d = 0;
        for (std::uint32_t v : rec.members) d = std::max(d, out.vertex_draft[v]);
        out.clique_draft[c] = d;
    }
    for (std::uint32_t d : out.vertex_draft)
        out.max_vertex_draft = std::max(out.max_vertex_draft, d);
    return out;
}

ExpansionReport exact_expansion(const Adjacency& g) {
    const std::size_t n = g.size();
    if (n == 0 || n > 24)
        throw std::invalid_argument("exact_expansion: needs 1 <= |V| <= 24");
    std::vector<std::uint32_t> nbr_mask(n, 0);
    std::vector<std::uint32_t> deg(n);
    std::uint64_t total_vol = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        for (std::uint32_t u : g[v]) nbr_mask[v] |= (1u << u);
        deg[v] = static_cast<std::uint32_t>(g[v].size());
        total_vol += deg[v];
    }

    ExpansionReport rep;
    rep.exact = true;
    bool have_alpha = false, have_phi = false;
    Rational best_alpha, best_phi;
    std::uint32_t best_alpha_set = 0, best_phi_set = 0;

    const std::uint32_t full = (n == 32) ? 0xffffffffU : ((1u << n) - 1);
    for (std::uint32_t s = 1; s <= full; ++s) {
        std::uint32_t boundary = 0;
        std::uint64_t vol = 0, cut = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (s & (1u << v)) {
                boundary |= nbr_mask[v];
                vol += deg[v];
                cut += static_cast<std::uint32_t>(
                    __builtin_popcount(nbr_mask[v] & ~s));
            }
        }
        boundary &= ~s;
        const auto size = static_cast<std::uint32_t>(__builtin_popcount(s));
        if (2 * size <= n) {
            const Rational a{BigInt(__builtin_popcount(boundary)), BigInt(size)};
            if (!have_alpha || a < best_alpha) {
                best_alpha = a;
                best_alpha_set = s;
                have_alpha = true;
            }
        }
        if (vol > 0 && 2 * vol <= total_vol) {
            const Rational p{BigInt(cut), BigInt(vol)};
            if (!have_phi || p < best_phi) {
                best_phi = p;
                best_phi_set = s;
                have_phi = true;
            }
        }
    }
    rep.vertex_expansion = best_alpha;
    rep.conductance = best_phi;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (best_alpha_set & (1u << v)) rep.witness_set_alpha.push_back(v);
        if (best_phi_set & (1u << v)) rep.witness_set_phi.push_back(v);
    }
    return rep;
}

namespace {

struct CutEvaluation {
    Rational alpha;
    Rational phi;
    std::vector<std::uint32_t> alpha_set;
    std::vector<std::uint32_t> phi_set;
};

// Exact boundary/cut/volume figures for a concrete vertex set and its
// complement; picks the orientation each measure requires.
CutEvaluation evaluate_cut(const Adjacency& g, const std::vector<char>& in_s) {
    const std::size_t n = g.size();
    std::uint64_t size_s = 0, vol_s = 0, vol_all = 0, cut = 0;
    std::uint64_t boundary_out = 0, boundary_in = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        vol_all += g[v].size();
        bool touches_other = false;
        for (std::uint32_t u : g[v]) {
            if (in_s[u] != in_s[v]) {
                touches_other = true;
                if (in_s[v]) ++cut;
            }
        }
        if (in_s[v]) {
            ++size_s;
            vol_s += g[v].size();
        } else if (touches_other) {
            ++boundary_out;
        }
        if (in_s[v] && touches_other) ++boundary_in;
    }
    CutEvaluation ev;
    const bool s_small_by_count = 2 * size_s <= n;
    const std::uint64_t a_size = s_small_by_count ? size_s : n - size_s;
    const std::uint64_t a_boundary = s_small_by_count ? boundary_out : boundary_in;
    ev.alpha = Rational(BigInt(a_boundary), BigInt(a_size));
    const bool s_small_by_vol = 2 * vol_s <= vol_all;
    const std::uint64_t p_vol = s_small_by_vol ? vol_s : vol_all - vol_s;
    ev.phi = Rational(BigInt(cut), BigInt(p_vol));
    for (std::uint32_t v = 0; v < n; ++v) {
        if (in_s[v] == s_small_by_count) ev.alpha_set.push_back(v);
        if (in_s[v] == s_small_by_vol) ev.phi_set.push_back(v);
    }
    return ev;
}

} // namespace

ExpansionReport heuristic_expansion(const EvolvingGraph& g) {
    const std::size_t n = g.vertex_count();
    const std::size_t nc = g.cliques.size();

    // Vertices born in the clique subtree rooted at each registry entry.
    std::vector<std::uint64_t> weight(nc, 0);
    for (std::uint32_t v = g.k; v < n; ++v)
        ++weight[static_cast<std::size_t>(g.birth_clique[v])];
    for (std::size_t c = nc; c-- > 1;)
        weight[static_cast<std::size_t>(g.cliques[c].parent)] += weight[c];

    // Rank separator candidates by how well V(c) balances the graph.
    std::vector<std::pair<std::uint64_t, std::size_t>> ranked;
    for (std::size_t c = 0; c < nc; ++c) {
        if (weight[c] == 0 || weight[c] + g.k >= n) continue;
        const std::uint64_t other = n - weight[c] - g.k;
        ranked.emplace_back(std::min(weight[c], other), c);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    ExpansionReport rep;
    rep.exact = false;
    bool have = false;

    const std::size_t budget = std::min<std::size_t>(ranked.size(), 32);
    std::vector<char> in_sub(nc), in_s(n);
    for (std::size_t r = 0; r < budget; ++r) {
        const std::size_t c0 = ranked[r].second;
        std::fill(in_sub.begin(), in_sub.end(), 0);
        in_sub[c0] = 1;
        for (std::size_t c = c0 + 1; c < nc; ++c)
            in_sub[c] = in_sub[static_cast<std::size_t>(g.cliques[c].parent)];
        std::fill(in_s.begin(), in_s.end(), 0);
        for (std::uint32_t v = g.k; v < n; ++v)
            in_s[v] = in_sub[static_cast<std::size_t>(g.birth_clique[v])];

        const CutEvaluation ev = evaluate_cut(g.adj, in_s);
        if (!have || ev.alpha < rep.vertex_expansion) {
            rep.vertex_expansion = ev.alpha;
            rep.witness_set_alpha = ev.alpha_set;
        }
        if (!have || ev.phi < rep.conductance) {
            rep.conductance = ev.phi;
            rep.witness_set_phi = ev.phi_set;
        }
        have = true;
    }

    if (!have) {
        // Degenerate graphs (no usable separator): a single min-degree vertex
        // still certifies an upper bound.
        std::uint32_t best = 0;
        for (std::uint32_t v = 1; v < n; ++v)
            if (g.adj[v].size() < g.adj[best].size()) best = v;
        std::fill(in_s.begin(), in_s.end(), 0);
        in_s[best] = 1;
        const CutEvaluation ev = evaluate_cut(g.adj, in_s);
        rep.vertex_expansion = ev.alpha;
        rep.witness_set_alpha = ev.alpha_set;
        rep.conductance = ev.phi;
        rep.witness_set_phi = ev.phi_set;
    }
    return rep;
}

bool is_perfect_elimination_reverse_birth(const EvolvingGraph& g) {
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        const auto& nv = g.adj[v];
        const auto end = std::lower_bound(nv.begin(), nv.end(), v);
        for (auto i = nv.begin(); i != end; ++i)
            for (auto j = std::next(i); j != end; ++j)
                if (!g.has_edge(*i, *j)) return false;
    }
    return true;
}

} // namespace rumorlab
