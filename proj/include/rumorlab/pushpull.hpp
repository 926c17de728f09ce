#ifndef RUMORLAB_PUSHPULL_HPP
#define RUMORLAB_PUSHPULL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rumorlab/rng.hpp"

namespace rumorlab {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

inline constexpr std::uint32_t kNeverInformed = 0xffffffffU;

struct SpreadTrace {
    std::uint32_t start_vertex = 0;
    std::vector<std::uint32_t> informed_at; // kNeverInformed if never reached
    std::vector<std::uint64_t> counts;      // counts[r] = informed after round r
    std::uint32_t rounds_executed = 0;
    bool completed = false;
};

// Ablation hooks; the protocol itself is PushPull.
enum class SpreadMode { PushPull, PushOnly, PullOnly };

std::uint64_t default_max_rounds(std::size_t n); // 10 n ln n, rounded up

// Synchronous Push-Pull. Every node contacts one uniform random neighbor per
// round (contacts drawn in vertex-id order from a single stream); informed
// nodes push, uninformed nodes pull, and all decisions are made against the
// previous round's informed set. Throws on a disconnected graph or bad start.
SpreadTrace run_push_pull(const Adjacency& g, std::uint32_t start,
                          std::uint64_t max_rounds, Rng& rng,
                          SpreadMode mode = SpreadMode::PushPull);

// Smallest round r with counts[r] >= ceil(fraction * n), or nullopt.
std::optional<std::uint32_t> rounds_to_fraction(const SpreadTrace& trace,
                                                double fraction);

// Round in which the last path vertex is informed when only the first path
// vertex starts informed, under full-graph dynamics. Throws if the input is
// not a path of adjacent vertices.
std::uint32_t path_relay_time(const Adjacency& g,
                              const std::vector<std::uint32_t>& path, Rng& rng,
                              std::uint64_t max_rounds = 0);

// CSV export: (round, informed_count) table plus (vertex, informed_at) table.
std::string trace_to_csv(const SpreadTrace& trace);

bool is_connected(const Adjacency& g);

} // namespace rumorlab

#endif
