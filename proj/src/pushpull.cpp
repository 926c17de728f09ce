#include "rumorlab/pushpull.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rumorlab {

std::uint64_t default_max_rounds(std::size_t n) {
    if (n < 2) return 1;
    return static_cast<std::uint64_t>(
        std::ceil(10.0 * static_cast<double>(n) * std::log(static_cast<double>(n))));
}

bool is_connected(const Adjacency& g) {
    if (g.empty()) return true;
    std::vector<char> seen(g.size(), 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t v : g[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == g.size();
}

SpreadTrace run_push_pull(const Adjacency& g, std::uint32_t start,
                          std::uint64_t max_rounds, Rng& rng, SpreadMode mode) {
    const std::size_t n = g.size();
    if (start >= n)
        throw std::invalid_argument("run_push_pull: invalid start vertex");
    if (!is_connected(g))
        throw std::invalid_argument("run_push_pull: graph is disconnected");

    // Flat CSR copy keeps the hot loop off the pointer-chasing adjacency.
    std::vector<std::size_t> off(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) off[v + 1] = off[v] + g[v].size();
    std::vector<std::uint32_t> nbr(off[n]);
    for (std::size_t v = 0; v < n; ++v)
        std::copy(g[v].begin(), g[v].end(), nbr.begin() + static_cast<long>(off[v]));

    SpreadTrace trace;
    trace.start_vertex = start;
    trace.informed_at.assign(n, kNeverInformed);
    trace.informed_at[start] = 0;
    trace.counts.push_back(1);

    std::vector<char> informed(n, 0);
    informed[start] = 1;
    std::uint64_t informed_count = 1;
    std::vector<std::uint32_t> newly;

    const bool push = (mode != SpreadMode::PullOnly);
    const bool pull = (mode != SpreadMode::PushOnly);

    std::uint32_t round = 0;
    while (informed_count < n && round < max_rounds) {
        ++round;
        newly.clear();
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::size_t deg = off[v + 1] - off[v];
            const std::uint32_t contact =
                nbr[off[v] + static_cast<std::size_t>(rng.next_below(deg))];
            if (informed[v]) {
                if (push && !informed[contact]) newly.push_back(contact);
            } else {
                if (pull && informed[contact]) newly.push_back(v);
            }
        }
        for (std::uint32_t v : newly) {
            if (!informed[v]) {
                informed[v] = 1;
                trace.informed_at[v] = round;
                ++informed_count;
            }
        }
        trace.counts.push_back(informed_count);
    }
    trace.rounds_executed = round;
    trace.completed = (informed_count == n);
    return trace;
}

std::optional<std::uint32_t> rounds_to_fraction(const SpreadTrace& trace,
                                                double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("rounds_to_fraction: fraction must be in (0,1]");
    const auto n = static_cast<double>(trace.informed_at.size());
    const auto target = static_cast<std::uint64_t>(std::ceil(fraction * n));
    for (std::size_t r = 0; r < trace.counts.size(); ++r)
        if (trace.counts[r] >= target) return static_cast<std::uint32_t>(r);
    return std::nullopt;
}

std::uint32_t path_relay_time(const Adjacency& g,
                              const std::vector<std::uint32_t>& path, Rng& rng,
                              std::uint64_t max_rounds) {
    if (path.empty())
        throw std::invalid_argument("path_relay_time: empty path");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const std::uint32_t u = path[i], v = path[i + 1];
        bool adjacent = false;
        if (u < g.size())
            for (std::uint32_t w : g[u])
                if (w == v) { adjacent = true; break; }
        if (!adjacent)
            throw std::invalid_argument("path_relay_time: input is not a path");
    }
    if (max_rounds == 0) max_rounds = default_max_rounds(g.size());
    const SpreadTrace trace = run_push_pull(g, path.front(), max_rounds, rng);
    return trace.informed_at[path.back()];
}

std::string trace_to_csv(const SpreadTrace& trace) {
    std::ostringstream out;
    out << "round,informed_count\r\n";
    for (std::size_t r = 0; r < trace.counts.size(); ++r)
        out << r << ',' << trace.counts[r] << "\r\n";
    out << "vertex,informed_at\r\n";
    for (std::size_t v = 0; v < trace.informed_at.size(); ++v) {
        out << v << ',';
        if (trace.informed_at[v] == kNeverInformed)
            out << "never";
        else
            out << trace.informed_at[v];
        out << "\r\n";
    }
    return out.str();
}

} // namespace rumorlab
