#include "rumorlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rumorlab/machinery.hpp"
#include "rumorlab/pushpull.hpp"
#include "rumorlab/structure.hpp"

namespace rumorlab {

const char* const kSpreadSchema = "spread.v1";
const char* const kStructureSchema = "structure.v1";
const char* const kLowerBoundSchema = "lowerbound.v1";

void ExperimentConfig::validate() const {
    if (sizes.empty())
        throw std::invalid_argument("config: sizes must be non-empty");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i] >= sizes[i + 1])
            throw std::invalid_argument("config: sizes must be increasing");
    for (std::uint64_t s : sizes)
        if (s == 0) throw std::invalid_argument("config: sizes must be positive");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("config: fraction must be in (0,1]");
    if (family == Family::KTree && k < 2)
        throw std::invalid_argument("config: k must be >= 2 for ktree");
    if (family == Family::KApollonian && k < 3)
        throw std::invalid_argument("config: k must be >= 3 for apollonian");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "rumorlab-config.v1")
        throw std::invalid_argument(
            "config: expected schema \"rumorlab-config.v1\"");
    ExperimentConfig cfg;
    if (j.contains("family")) cfg.family = family_from_name(j["family"]);
    cfg.k = j.value("k", cfg.k);
    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<std::uint64_t>>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.master_seed = j.value("seed", cfg.master_seed);
    cfg.max_rounds = j.value("max_rounds", cfg.max_rounds);
    cfg.fraction = j.value("fraction", cfg.fraction);
    cfg.f_override = j.value("f", cfg.f_override);
    cfg.m_override = j.value("m", cfg.m_override);
    cfg.tau_override = j.value("tau", cfg.tau_override);
    cfg.out_dir = j.value("out", cfg.out_dir);
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t size,
                         std::uint64_t trial) {
    return mix_seed(master, size, trial);
}

namespace {

EvolvingGraph generate_for(const ExperimentConfig& cfg, std::uint64_t size,
                           Rng& rng) {
    return cfg.family == Family::KTree
               ? generate_k_tree(cfg.k, size, rng)
               : generate_k_apollonian(cfg.k, size, rng);
}

} // namespace

SpreadRow run_spread_trial(const ExperimentConfig& cfg, std::uint64_t size,
                           std::uint64_t trial) {
    const std::uint64_t seed = trial_seed(cfg.master_seed, size, trial);
    Rng gen_rng(mix_seed(seed, 'g'));
    const EvolvingGraph g = generate_for(cfg, size, gen_rng);
    const std::size_t n = g.vertex_count();

    Rng start_rng(mix_seed(seed, 's'));
    const auto start = static_cast<std::uint32_t>(start_rng.next_below(n));
    const std::uint64_t max_rounds =
        cfg.max_rounds ? cfg.max_rounds : default_max_rounds(n);

    Rng run_rng(mix_seed(seed, 'p'));
    const SpreadTrace trace = run_push_pull(g.adj, start, max_rounds, run_rng);

    SpreadRow row;
    row.seed = seed;
    row.n = n;
    row.k = cfg.k;
    row.family = cfg.family;
    row.start_vertex = start;
    const auto frac = rounds_to_fraction(trace, cfg.fraction);
    const auto all = rounds_to_fraction(trace, 1.0);
    row.censored = !trace.completed;
    row.rounds_to_frac = frac ? *frac : max_rounds;
    row.rounds_to_all = all ? *all : max_rounds;
    return row;
}

StructureRow run_structure_trial(const ExperimentConfig& cfg, std::uint64_t size,
                                 std::uint64_t trial) {
    const std::uint64_t seed = trial_seed(cfg.master_seed, size, trial);
    Rng gen_rng(mix_seed(seed, 'g'));
    const EvolvingGraph g = generate_for(cfg, size, gen_rng);

    StructureRow row;
    row.seed = seed;
    row.n = g.vertex_count();
    row.k = cfg.k;
    row.family = cfg.family;
    row.cc = to_double(clustering_coefficient(g.adj));
    if (g.vertex_count() <= 12000) {
        row.diameter = diameter(g.adj);
        row.diameter_exact = true;
    } else {
        Rng diam_rng(mix_seed(seed, 'd'));
        row.diameter = eccentricity_sample(g.adj, 32, diam_rng);
        row.diameter_exact = false;
    }
    row.max_draft = draft_labels(g).max_vertex_draft;
    row.max_degree = max_degree(g.adj);

    Schedule sched = upper_bound_schedule(cfg.family, cfg.k, size, cfg.f_override);
    if (cfg.m_override) sched.m = cfg.m_override;
    if (cfg.tau_override) sched.tau = cfg.tau_override;
    sched.m = std::min(sched.m, g.steps);
    row.schedule_m = sched.m;
    row.schedule_tau = sched.tau;

    const HighwayForest forest = build_highway_forest(g, sched.m);
    for (std::uint32_t h : forest.root_heights)
        row.forest_height = std::max(row.forest_height, h);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> forest_edges;
    for (std::uint32_t x = g.k; x < g.k + sched.m; ++x)
        forest_edges.emplace_back(x, static_cast<std::uint32_t>(forest.parent[x]));
    if (!forest_edges.empty()) {
        const auto fast = classify_fast_edges(g, forest_edges, sched.tau);
        row.fast_edge_fraction =
            static_cast<double>(std::count(fast.begin(), fast.end(), char(1))) /
            static_cast<double>(fast.size());
    }

    const auto pieces = decompose_pieces(g, sched.m);
    const auto nice = classify_nice(g, forest, pieces, sched.tau);
    const std::uint64_t modern = g.steps - sched.m;
    row.bad_fraction =
        modern == 0 ? 0.0
                    : 1.0 - static_cast<double>(nice.sigma.size()) /
                                static_cast<double>(modern);

    const ExpansionReport exp = heuristic_expansion(g);
    row.alpha_upper = to_double(exp.vertex_expansion);
    row.phi_upper = to_double(exp.conductance);
    return row;
}

LowerBoundRow run_lowerbound_trial(const ExperimentConfig& cfg, std::uint64_t size,
                                   std::uint64_t trial) {
    const std::uint64_t seed = trial_seed(cfg.master_seed, size, trial);
    Rng gen_rng(mix_seed(seed, 'g'));
    const EvolvingGraph g = generate_for(cfg, size, gen_rng);

    LowerBoundRow row;
    row.seed = seed;
    row.n = g.vertex_count();
    row.k = cfg.k;
    row.f = cfg.f_override > 0.0 ? cfg.f_override : default_slow_function(size);
    row.m = cfg.m_override ? cfg.m_override : lower_bound_cut(cfg.k, size, cfg.f_override);
    row.m = std::min(row.m, g.steps);

    const auto pieces = decompose_pieces(g, row.m);
    row.pieces = pieces.piece_sizes.size();
    const double n = static_cast<double>(size);
    const double lo = n / (static_cast<double>(row.m) * row.f);
    const double hi = n * row.f / static_cast<double>(row.m);
    for (std::uint64_t modern : pieces.piece_sizes) {
        const double vertices = static_cast<double>(modern + cfg.k);
        if (vertices >= lo && vertices <= hi) ++row.moderate_pieces;
    }

    if (auto w = find_barrier(g, 2 * cfg.k, row.m)) {
        row.barrier_found = true;
        row.barrier_s = w->s;
    }

    // Forced-barrier spread run: the delay observed at the seed barrier.
    Rng force_rng(mix_seed(seed, 'f'));
    const EvolvingGraph forced = force_barrier(cfg.k, size, force_rng);
    std::vector<std::uint32_t> c1(cfg.k), c2(cfg.k);
    for (std::uint32_t i = 0; i < cfg.k; ++i) {
        c1[i] = i;
        c2[i] = cfg.k + i;
    }
    const auto witness = verify_barrier(forced.adj, c1, c2);
    if (!witness)
        throw std::logic_error("lowerbound: forced barrier not verified");
    row.forced_s = witness->s;

    Rng start_rng(mix_seed(seed, 's'));
    const auto start =
        static_cast<std::uint32_t>(start_rng.next_below(forced.vertex_count()));
    const std::uint64_t max_rounds =
        cfg.max_rounds ? cfg.max_rounds : default_max_rounds(forced.vertex_count());
    Rng run_rng(mix_seed(seed, 'p'));
    const SpreadTrace trace = run_push_pull(forced.adj, start, max_rounds, run_rng);
    const auto all = rounds_to_fraction(trace, 1.0);
    row.forced_censored = !trace.completed;
    row.forced_rounds_to_all = all ? *all : max_rounds;
    return row;
}

// ---------------------------------------------------------------------------
// CSV

namespace {
constexpr const char* kCrlf = "\r\n";
}

std::string spread_csv(const std::vector<SpreadRow>& rows) {
    std::ostringstream out;
    out << "schema,seed,n,k,family,start_vertex,rounds_to_99pct,rounds_to_all,"
           "censored"
        << kCrlf;
    for (const auto& r : rows)
        out << kSpreadSchema << ',' << r.seed << ',' << r.n << ',' << r.k << ','
            << family_name(r.family) << ',' << r.start_vertex << ','
            << r.rounds_to_frac << ',' << r.rounds_to_all << ','
            << (r.censored ? 1 : 0) << kCrlf;
    return out.str();
}

std::string structure_csv(const std::vector<StructureRow>& rows) {
    std::ostringstream out;
    out << "schema,seed,n,k,family,cc,diameter,diameter_exact,max_draft,"
           "max_degree,m,tau,forest_height,fast_edge_fraction,bad_fraction,"
           "alpha_upper,phi_upper"
        << kCrlf;
    for (const auto& r : rows)
        out << kStructureSchema << ',' << r.seed << ',' << r.n << ',' << r.k << ','
            << family_name(r.family) << ',' << r.cc << ',' << r.diameter << ','
            << (r.diameter_exact ? 1 : 0) << ',' << r.max_draft << ','
            << r.max_degree << ',' << r.schedule_m << ',' << r.schedule_tau << ','
            << r.forest_height << ',' << r.fast_edge_fraction << ','
            << r.bad_fraction << ',' << r.alpha_upper << ',' << r.phi_upper
            << kCrlf;
    return out.str();
}

std::string lowerbound_csv(const std::vector<LowerBoundRow>& rows) {
    std::ostringstream out;
    out << "schema,seed,n,k,m,f,pieces,moderate_pieces,barrier_found,barrier_s,"
           "forced_s,forced_rounds_to_all,forced_censored"
        << kCrlf;
    for (const auto& r : rows)
        out << kLowerBoundSchema << ',' << r.seed << ',' << r.n << ',' << r.k
            << ',' << r.m << ',' << r.f << ',' << r.pieces << ','
            << r.moderate_pieces << ',' << (r.barrier_found ? 1 : 0) << ','
            << r.barrier_s << ',' << r.forced_s << ',' << r.forced_rounds_to_all
            << ',' << (r.forced_censored ? 1 : 0) << kCrlf;
    return out.str();
}

std::vector<SpreadRow> parse_spread_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<SpreadRow> rows;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (header) {
            if (cells.empty() || cells[0] != "schema")
                throw std::runtime_error("spread csv: missing schema column");
            header = false;
            continue;
        }
        if (cells.size() != 9)
            throw std::runtime_error("spread csv: bad row width");
        if (cells[0] != kSpreadSchema)
            throw std::runtime_error("spread csv: schema mismatch, got " + cells[0]);
        SpreadRow r;
        r.seed = std::stoull(cells[1]);
        r.n = std::stoull(cells[2]);
        r.k = static_cast<std::uint32_t>(std::stoul(cells[3]));
        r.family = family_from_name(cells[4]);
        r.start_vertex = static_cast<std::uint32_t>(std::stoul(cells[5]));
        r.rounds_to_frac = std::stoull(cells[6]);
        r.rounds_to_all = std::stoull(cells[7]);
        r.censored = (cells[8] == "1");
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Fitting and reporting

double median(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("median: empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

PowerFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_loglog: need >= 3 points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i]))
            throw std::invalid_argument("fit_loglog: non-positive or censored data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += lx[i]; my += ly[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog: degenerate x");
    PowerFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
        rss += r * r;
    }
    fit.std_error =
        n > 2 ? std::sqrt(rss / (static_cast<double>(n - 2) * sxx)) : 0.0;
    return fit;
}

ReportSummary summarize_spread(const std::vector<SpreadRow>& rows) {
    if (rows.empty())
        throw std::invalid_argument("report: no rows");
    std::map<std::uint64_t, std::vector<double>> all_by_n, frac_by_n;
    for (const auto& r : rows) {
        const double inf = std::numeric_limits<double>::infinity();
        all_by_n[r.n].push_back(r.censored ? inf
                                           : static_cast<double>(r.rounds_to_all));
        frac_by_n[r.n].push_back(static_cast<double>(r.rounds_to_frac));
    }
    if (all_by_n.size() < 3)
        throw std::invalid_argument("report: need >= 3 sizes");

    std::vector<double> ns, med_all, med_frac, logns;
    for (auto& [n, v] : all_by_n) {
        ns.push_back(static_cast<double>(n));
        logns.push_back(std::log(static_cast<double>(n)));
        med_all.push_back(median(v));
        med_frac.push_back(median(frac_by_n[n]));
    }

    ReportSummary s;
    const PowerFit fa = fit_loglog(ns, med_all);
    const PowerFit ff = fit_loglog(ns, med_frac);
    const PowerFit fg = fit_loglog(logns, med_frac);
    s.beta_all = fa.exponent;
    s.beta_all_se = fa.std_error;
    s.beta_frac = ff.exponent;
    s.beta_frac_se = ff.std_error;
    s.gamma = fg.exponent;
    s.gamma_se = fg.std_error;
    const double k = static_cast<double>(rows.front().k);
    s.theory_exponent = (k - 1.0) / (k * k + k - 1.0);
    s.dichotomy = (s.beta_all - 2.0 * s.beta_all_se > 0.0) && s.beta_frac < 0.05;

    std::ostringstream out;
    out << "sizes: ";
    for (std::size_t i = 0; i < ns.size(); ++i)
        out << static_cast<std::uint64_t>(ns[i])
            << " (med_all=" << med_all[i] << ", med_frac=" << med_frac[i] << ") ";
    out << "\nrounds_to_all ~ n^" << s.beta_all << " +- " << s.beta_all_se
        << "  [theory anchor n^" << s.theory_exponent << "]"
        << "\nrounds_to_99pct ~ n^" << s.beta_frac << " +- " << s.beta_frac_se
        << "\nrounds_to_99pct ~ (log n)^" << s.gamma << " +- " << s.gamma_se
        << "\nratio med_all/med_frac at n=" << static_cast<std::uint64_t>(ns.back())
        << ": " << med_all.back() / std::max(1.0, med_frac.back())
        << "\ndichotomy: " << (s.dichotomy ? "yes" : "no") << '\n';
    s.text = out.str();
    return s;
}

} // namespace rumorlab
