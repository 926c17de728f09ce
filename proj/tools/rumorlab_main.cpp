#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rumorlab/experiment.hpp"
#include "rumorlab/graph.hpp"
#include "rumorlab/rng.hpp"

namespace fs = std::filesystem;
using namespace rumorlab;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string family;
    std::string out;
    std::uint64_t seed = 0;
    std::uint32_t k = 0;
    std::vector<std::uint64_t> sizes;
    std::uint64_t trials = 0;
    std::uint64_t max_rounds = 0;
    double fraction = 0.0;
    bool seed_set = false, k_set = false, trials_set = false;
    bool max_rounds_set = false, fraction_set = false;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--seed", o.seed, "master seed")
        ->each([&](const std::string&) { o.seed_set = true; });
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--family", o.family, "ktree | apollonian");
    cmd->add_option("--k", o.k, "clique size k")
        ->each([&](const std::string&) { o.k_set = true; });
    cmd->add_option("--sizes", o.sizes, "growth sizes (steps)")->delimiter(',');
    cmd->add_option("--trials", o.trials, "trials per size")
        ->each([&](const std::string&) { o.trials_set = true; });
    cmd->add_option("--max-rounds", o.max_rounds, "protocol round cap")
        ->each([&](const std::string&) { o.max_rounds_set = true; });
    cmd->add_option("--fraction", o.fraction, "almost-all threshold")
        ->each([&](const std::string&) { o.fraction_set = true; });
}

ExperimentConfig resolve_config(const CliOverrides& o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty())
        cfg = ExperimentConfig::from_json_file(o.config_path);
    if (!o.family.empty()) cfg.family = family_from_name(o.family);
    if (o.k_set) cfg.k = o.k;
    if (!o.sizes.empty()) cfg.sizes = o.sizes;
    if (o.trials_set) cfg.trials = o.trials;
    if (o.seed_set) cfg.master_seed = o.seed;
    if (o.max_rounds_set) cfg.max_rounds = o.max_rounds;
    if (o.fraction_set) cfg.fraction = o.fraction;
    if (!o.out.empty()) cfg.out_dir = o.out;
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_generate(const ExperimentConfig& cfg) {
    for (std::uint64_t size : cfg.sizes) {
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = trial_seed(cfg.master_seed, size, trial);
            Rng rng(mix_seed(seed, 'g'));
            EvolvingGraph g = cfg.family == Family::KTree
                                  ? generate_k_tree(cfg.k, size, rng)
                                  : generate_k_apollonian(cfg.k, size, rng);
            g.seed = seed;
            std::ostringstream name;
            name << "graph_" << family_name(cfg.family) << "_k" << cfg.k << "_n"
                 << size << "_s" << seed << ".txt";
            write_file(fs::path(cfg.out_dir) / name.str(), serialize_graph(g));
        }
    }
    return 0;
}

int cmd_spread(const ExperimentConfig& cfg) {
    std::vector<SpreadRow> rows;
    for (std::uint64_t size : cfg.sizes)
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial)
            rows.push_back(run_spread_trial(cfg, size, trial));
    write_file(fs::path(cfg.out_dir) / "spread.csv", spread_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to "
              << (fs::path(cfg.out_dir) / "spread.csv").string() << '\n';
    return 0;
}

int cmd_lowerbound(const ExperimentConfig& cfg) {
    std::vector<LowerBoundRow> rows;
    for (std::uint64_t size : cfg.sizes)
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial)
            rows.push_back(run_lowerbound_trial(cfg, size, trial));
    write_file(fs::path(cfg.out_dir) / "lowerbound.csv", lowerbound_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to "
              << (fs::path(cfg.out_dir) / "lowerbound.csv").string() << '\n';
    return 0;
}

int cmd_structure(const ExperimentConfig& cfg) {
    std::vector<StructureRow> rows;
    for (std::uint64_t size : cfg.sizes)
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial)
            rows.push_back(run_structure_trial(cfg, size, trial));
    write_file(fs::path(cfg.out_dir) / "structure.csv", structure_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to "
              << (fs::path(cfg.out_dir) / "structure.csv").string() << '\n';
    return 0;
}

int cmd_report(const std::vector<std::string>& csv_paths) {
    std::vector<SpreadRow> rows;
    for (const auto& path : csv_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto part = parse_spread_csv(buf.str());
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const ReportSummary summary = summarize_spread(rows);
    std::cout << summary.text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rumor-spreading simulation lab for random k-trees and "
                 "k-Apollonian networks"};
    app.require_subcommand(1);

    CliOverrides o;
    auto* generate = app.add_subcommand("generate", "write serialized graphs");
    auto* spread = app.add_subcommand("spread", "push-pull spread trials");
    auto* lowerbound =
        app.add_subcommand("lowerbound", "barrier statistics and forced runs");
    auto* structure = app.add_subcommand("structure", "structural survey");
    add_common_flags(generate, o);
    add_common_flags(spread, o);
    add_common_flags(lowerbound, o);
    add_common_flags(structure, o);

    std::vector<std::string> report_csvs;
    auto* report = app.add_subcommand("report", "summarize spread CSVs");
    report->add_option("csv", report_csvs, "spread CSV files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) return cmd_report(report_csvs);
        const ExperimentConfig cfg = resolve_config(o);
        if (generate->parsed()) return cmd_generate(cfg);
        if (spread->parsed()) return cmd_spread(cfg);
        if (lowerbound->parsed()) return cmd_lowerbound(cfg);
        if (structure->parsed()) return cmd_structure(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
