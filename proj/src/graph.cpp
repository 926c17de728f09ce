#include "rumorlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rumorlab {

std::string family_name(Family f) {
    return f == Family::KTree ? "ktree" : "apollonian";
}

Family family_from_name(const std::string& name) {
    if (name == "ktree") return Family::KTree;
    if (name == "apollonian") return Family::KApollonian;
    throw std::invalid_argument("unknown graph family: " + name);
}

bool EvolvingGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    if (u >= adj.size() || v >= adj.size() || u == v) return false;
    const auto& nu = adj[u];
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::uint32_t EvolvingGraph::degree_of(std::uint32_t v) const {
    if (v >= adj.size())
        throw std::out_of_range("degree_of: unknown vertex id");
    return static_cast<std::uint32_t>(adj[v].size());
}

std::uint32_t EvolvingGraph::degree_at_cut(std::uint32_t v, std::uint64_t m) const {
    if (v >= adj.size())
        throw std::out_of_range("degree_at_cut: unknown vertex id");
    const std::uint64_t limit = k + m; // ids < limit are born by round m
    const auto& nv = adj[v];
    return static_cast<std::uint32_t>(
        std::upper_bound(nv.begin(), nv.end(), limit - 1) - nv.begin());
}

std::map<std::uint32_t, std::uint64_t> EvolvingGraph::degree_histogram() const {
    std::map<std::uint32_t, std::uint64_t> hist;
    for (const auto& nv : adj) ++hist[static_cast<std::uint32_t>(nv.size())];
    return hist;
}

std::uint64_t EvolvingGraph::cliques_containing(std::uint32_t v) const {
    if (v >= vertex_clique_count.size())
        throw std::out_of_range("cliques_containing: unknown vertex id");
    return vertex_clique_count[v];
}

std::uint64_t EvolvingGraph::cliques_containing_edge(std::uint32_t u, std::uint32_t v,
                                                     bool active_only) const {
    if (!has_edge(u, v))
        throw std::invalid_argument("cliques_containing_edge: not an edge");
    std::uint64_t count = 0;
    for (const auto& c : cliques) {
        if (active_only && c.deactivated_round >= 0) continue;
        if (std::binary_search(c.members.begin(), c.members.end(), u) &&
            std::binary_search(c.members.begin(), c.members.end(), v))
            ++count;
    }
    return count;
}

EvolvingGraph make_seed_graph(Family family, std::uint32_t k) {
    EvolvingGraph g;
    g.family = family;
    g.k = k;
    g.steps = 0;
    g.adj.resize(k);
    for (std::uint32_t u = 0; u < k; ++u)
        for (std::uint32_t v = 0; v < k; ++v)
            if (u != v) g.adj[u].push_back(v);
    CliqueRecord seed;
    seed.members.resize(k);
    for (std::uint32_t v = 0; v < k; ++v) seed.members[v] = v;
    g.cliques.push_back(std::move(seed));
    g.birth_clique.assign(k, -1);
    g.vertex_clique_count.assign(k, 1);
    return g;
}

std::size_t choose_clique(const EvolvingGraph& g, Rng& rng) {
    if (g.family == Family::KTree)
        return static_cast<std::size_t>(rng.next_below(g.cliques.size()));
    // Active cliques are a (k-1)/k fraction, so rejection terminates fast.
    for (;;) {
        auto idx = static_cast<std::size_t>(rng.next_below(g.cliques.size()));
        if (g.cliques[idx].deactivated_round < 0) return idx;
    }
}

std::uint32_t add_vertex(EvolvingGraph& g, std::size_t clique_index) {
    if (clique_index >= g.cliques.size())
        throw std::out_of_range("add_vertex: bad clique index");
    if (g.family == Family::KApollonian &&
        g.cliques[clique_index].deactivated_round >= 0)
        throw std::invalid_argument("add_vertex: clique is not active");
    if (g.adj.size() >= std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("add_vertex: vertex budget exhausted");

    const std::uint64_t round = ++g.steps;
    const auto x = static_cast<std::uint32_t>(g.adj.size());
    const std::vector<std::uint32_t> base = g.cliques[clique_index].members;

    g.adj.emplace_back(base);
    for (std::uint32_t u : base) g.adj[u].push_back(x);
    g.birth_clique.push_back(static_cast<std::int64_t>(clique_index));
    g.vertex_clique_count.push_back(0);

    if (g.family == Family::KApollonian)
        g.cliques[clique_index].deactivated_round = static_cast<std::int64_t>(round);

    for (std::uint32_t i = 0; i < g.k; ++i) {
        CliqueRecord c;
        c.members.reserve(g.k);
        for (std::uint32_t j = 0; j < g.k; ++j)
            if (j != i) c.members.push_back(base[j]);
        c.members.push_back(x); // x is the largest id, list stays sorted
        c.created_round = round;
        c.parent = static_cast<std::int64_t>(clique_index);
        for (std::uint32_t u : c.members) ++g.vertex_clique_count[u];
        g.cliques.push_back(std::move(c));
    }
    return x;
}

EvolvingGraph generate_k_tree(std::uint32_t k, std::uint64_t steps, Rng& rng) {
    if (k < 2)
        throw std::invalid_argument("generate_k_tree: k must be >= 2");
    if (steps > std::numeric_limits<std::uint32_t>::max() - k)
        throw std::length_error("generate_k_tree: vertex budget exceeded");
    EvolvingGraph g = make_seed_graph(Family::KTree, k);
    for (std::uint64_t t = 0; t < steps; ++t)
        add_vertex(g, choose_clique(g, rng));
    return g;
}

EvolvingGraph generate_k_apollonian(std::uint32_t k, std::uint64_t steps, Rng& rng) {
    if (k < 3)
        throw std::invalid_argument(
            "generate_k_apollonian: k must be >= 3 (active-clique counting "
            "degenerates at k = 2)");
    if (steps > std::numeric_limits<std::uint32_t>::max() - k)
        throw std::length_error("generate_k_apollonian: vertex budget exceeded");
    EvolvingGraph g = make_seed_graph(Family::KApollonian, k);
    for (std::uint64_t t = 0; t < steps; ++t)
        add_vertex(g, choose_clique(g, rng));
    return g;
}

std::unordered_map<std::uint64_t, std::uint32_t>
edge_clique_counts(const EvolvingGraph& g, std::uint64_t m, bool active_only) {
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    counts.reserve(g.cliques.size() * g.k);
    for (const auto& c : g.cliques) {
        if (c.created_round > m) continue;
        if (active_only && !c.active_at(m)) continue;
        for (std::size_t i = 0; i < c.members.size(); ++i)
            for (std::size_t j = i + 1; j < c.members.size(); ++j)
                ++counts[edge_key(c.members[i], c.members[j])];
    }
    return counts;
}

RecursiveTree generate_recursive_tree(std::uint32_t d, std::uint64_t steps, Rng& rng) {
    if (d < 1)
        throw std::invalid_argument("generate_recursive_tree: d must be >= 1");
    RecursiveTree t;
    t.d = d;
    t.parent.assign(1, 0);
    t.depth.assign(1, 0);
    std::vector<std::uint32_t> leaves{0};
    for (std::uint64_t s = 0; s < steps; ++s) {
        const auto pick = static_cast<std::size_t>(rng.next_below(leaves.size()));
        const std::uint32_t leaf = leaves[pick];
        leaves[pick] = leaves.back();
        leaves.pop_back();
        for (std::uint32_t c = 0; c < d; ++c) {
            const auto id = static_cast<std::uint32_t>(t.parent.size());
            t.parent.push_back(leaf);
            t.depth.push_back(t.depth[leaf] + 1);
            t.height = std::max(t.height, t.depth[leaf] + 1);
            leaves.push_back(id);
        }
    }
    return t;
}

std::string serialize_graph(const EvolvingGraph& g, bool with_cliques) {
    std::ostringstream out;
    out << family_name(g.family) << ' ' << g.k << ' ' << g.steps << ' ' << g.seed
        << '\n';
    for (std::uint32_t u = 0; u < g.adj.size(); ++u)
        for (std::uint32_t v : g.adj[u])
            if (v > u) out << u << ' ' << v << '\n';
    if (with_cliques) {
        out << "cliques " << g.cliques.size() << '\n';
        for (const auto& c : g.cliques) {
            for (std::uint32_t v : c.members) out << v << ' ';
            out << c.created_round << ' ' << c.deactivated_round << ' ' << c.parent
                << '\n';
        }
    }
    return out.str();
}

EvolvingGraph deserialize_graph(std::istream& in) {
    std::string fam;
    std::uint32_t k = 0;
    std::uint64_t steps = 0, seed = 0;
    if (!(in >> fam >> k >> steps >> seed))
        throw std::runtime_error("graph parse: bad header");
    const Family family = family_from_name(fam);
    if (k < 2) throw std::runtime_error("graph parse: bad k");

    const std::uint64_t n = k + steps;
    std::vector<std::vector<std::uint32_t>> older(n); // neighbors with smaller id
    std::string tok;
    std::uint64_t declared_cliques = 0;
    while (in >> tok) {
        if (tok == "cliques") {
            in >> declared_cliques;
            break; // registry is rebuilt by replay below
        }
        std::uint32_t u = static_cast<std::uint32_t>(std::stoul(tok));
        std::uint32_t v;
        if (!(in >> v)) throw std::runtime_error("graph parse: dangling edge");
        if (u > v) std::swap(u, v);
        if (v >= n || u == v) throw std::runtime_error("graph parse: bad edge");
        older[v].push_back(u);
    }

    // Replay the birth history: vertex k+t-1 joined the active clique whose
    // member set equals its older neighbors.
    EvolvingGraph g = make_seed_graph(family, k);
    g.seed = seed;
    std::map<std::vector<std::uint32_t>, std::size_t> by_members;
    by_members[g.cliques[0].members] = 0;
    for (std::uint32_t x = k; x < n; ++x) {
        auto& mem = older[x];
        std::sort(mem.begin(), mem.end());
        if (mem.size() != k)
            throw std::runtime_error("graph parse: vertex has wrong birth degree");
        auto it = by_members.find(mem);
        if (it == by_members.end())
            throw std::runtime_error("graph parse: birth clique not in registry");
        const std::size_t before = g.cliques.size();
        add_vertex(g, it->second);
        for (std::size_t c = before; c < g.cliques.size(); ++c)
            by_members[g.cliques[c].members] = c;
    }
    if (declared_cliques != 0 && declared_cliques != g.cliques.size())
        throw std::runtime_error("graph parse: clique count mismatch");
    if (g.steps != steps)
        throw std::runtime_error("graph parse: steps mismatch");
    return g;
}

EvolvingGraph deserialize_graph(const std::string& text) {
    std::istringstream in(text);
    return deserialize_graph(in);
}

double tail_exponent_mle(const std::vector<std::uint32_t>& degrees,
                         std::uint64_t min_obs) {
    if (degrees.empty())
        throw std::invalid_argument("tail_exponent_mle: empty sample");
    std::map<std::uint32_t, std::uint64_t> hist;
    for (std::uint32_t d : degrees) ++hist[d];
    // Smallest degree whose bin still has min_obs observations; everything
    // below it is discarded as non-tail.
    std::uint32_t d_min = hist.begin()->first;
    for (const auto& [d, c] : hist)
        if (c >= min_obs) d_min = d;
    std::uint64_t n = 0;
    double log_sum = 0.0;
    const double shift = static_cast<double>(d_min) - 0.5;
    for (const auto& [d, c] : hist) {
        if (d < d_min) continue;
        n += c;
        log_sum += static_cast<double>(c) * std::log(static_cast<double>(d) / shift);
    }
    if (n == 0 || log_sum <= 0.0)
        throw std::invalid_argument("tail_exponent_mle: degenerate tail");
    return 1.0 + static_cast<double>(n) / log_sum;
}

} // namespace rumorlab
