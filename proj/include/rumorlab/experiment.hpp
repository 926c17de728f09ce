#ifndef RUMORLAB_EXPERIMENT_HPP
#define RUMORLAB_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rumorlab/graph.hpp"

namespace rumorlab {

// Seeded, reproducible experiment description. Per-trial seeds derive from
// (master_seed, size, trial index); graph growth, start-vertex choice, and
// the protocol run each use a disjoint sub-stream.
struct ExperimentConfig {
    Family family = Family::KTree;
    std::uint32_t k = 2;
    std::vector<std::uint64_t> sizes; // growth steps per experiment cell
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 1;
    std::uint64_t max_rounds = 0; // 0 = 10 n ln n
    double fraction = 0.99;       // the "almost all" threshold
    double f_override = 0.0;      // schedule overrides; 0 = built-in default
    std::uint64_t m_override = 0;
    std::uint64_t tau_override = 0;
    std::string out_dir = ".";

    void validate() const;
    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
};

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t size,
                         std::uint64_t trial);

struct SpreadRow {
    std::uint64_t seed = 0;
    std::uint64_t n = 0; // vertex count
    std::uint32_t k = 2;
    Family family = Family::KTree;
    std::uint32_t start_vertex = 0;
    std::uint64_t rounds_to_frac = 0;
    std::uint64_t rounds_to_all = 0;
    bool censored = false; // rounds_to_all capped at max_rounds
};

struct StructureRow {
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::uint32_t k = 2;
    Family family = Family::KTree;
    double cc = 0.0;
    std::uint32_t diameter = 0;
    bool diameter_exact = true;
    std::uint32_t max_draft = 0;
    std::uint32_t max_degree = 0;
    std::uint64_t schedule_m = 0;
    std::uint64_t schedule_tau = 0;
    std::uint32_t forest_height = 0;
    double fast_edge_fraction = 0.0;
    double bad_fraction = 0.0;
    double alpha_upper = 0.0;
    double phi_upper = 0.0;
};

struct LowerBoundRow {
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::uint32_t k = 2;
    std::uint64_t m = 0;
    double f = 0.0;
    std::uint64_t pieces = 0;
    std::uint64_t moderate_pieces = 0;
    bool barrier_found = false;
    std::uint64_t barrier_s = 0;
    std::uint64_t forced_s = 0;
    std::uint64_t forced_rounds_to_all = 0;
    bool forced_censored = false;
};

SpreadRow run_spread_trial(const ExperimentConfig& cfg, std::uint64_t size,
                           std::uint64_t trial);
StructureRow run_structure_trial(const ExperimentConfig& cfg, std::uint64_t size,
                                 std::uint64_t trial);
LowerBoundRow run_lowerbound_trial(const ExperimentConfig& cfg, std::uint64_t size,
                                   std::uint64_t trial);

// CSV schemas are versioned through the leading column; the report command
// refuses files whose schema tag does not match.
extern const char* const kSpreadSchema;     // "spread.v1"
extern const char* const kStructureSchema;  // "structure.v1"
extern const char* const kLowerBoundSchema; // "lowerbound.v1"

std::string spread_csv(const std::vector<SpreadRow>& rows);
std::string structure_csv(const std::vector<StructureRow>& rows);
std::string lowerbound_csv(const std::vector<LowerBoundRow>& rows);
std::vector<SpreadRow> parse_spread_csv(const std::string& text);

// Least-squares fit of log(y) against log(x); exponent plus standard error.
struct PowerFit {
    double exponent = 0.0;
    double std_error = 0.0;
    double intercept = 0.0;
};
PowerFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

// Summary of the almost-all vs. all dichotomy over a set of spread rows.
struct ReportSummary {
    double beta_all = 0.0, beta_all_se = 0.0;    // rounds_to_all ~ n^beta
    double beta_frac = 0.0, beta_frac_se = 0.0;  // rounds_to_frac ~ n^beta
    double gamma = 0.0, gamma_se = 0.0;          // rounds_to_frac ~ (log n)^gamma
    double theory_exponent = 0.0;                // (k-1)/(k^2+k-1)
    bool dichotomy = false;
    std::string text;
};
ReportSummary summarize_spread(const std::vector<SpreadRow>& rows);

} // namespace rumorlab

#endif
