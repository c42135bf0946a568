#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "robustness/divergence.hpp"
#include "robustness/graph.hpp"
#include "robustness/neighbourhood.hpp"

namespace robustness {

enum class Engine { Exact, Approx, Auto };

Engine parse_engine(const std::string &s);
std::string to_string(Engine e);

inline const std::vector<std::string> &known_strategies() {
    static const std::vector<std::string> names{"random", "degree", "nearroot", "pagerank", "lp"};
    return names;
}

struct ExperimentConfig {
    std::string graph_name = "graph";
    std::vector<std::string> strategies{"random", "degree", "pagerank", "lp"};
    std::vector<double> thetas{0.01, 0.05, 0.1, 0.15, 0.2, 0.3};
    std::size_t runs = 7;
    int register_bits = 7;
    std::uint64_t seed = 0;
    Engine engine = Engine::Auto;
    std::size_t exact_threshold = 100000;  // Auto uses the exact engine up to this many nodes
    bool symmetrize = false;
    std::size_t lp_max_rounds = 100;
    std::optional<std::filesystem::path> out_dir;
    /// Reuse rankings cached in out_dir/rankings when present.
    bool reuse_rankings = false;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig &cfg);

/// Per-run seed: base ^ hash(strategy, theta, run).
std::uint64_t cell_seed(std::uint64_t base, const std::string &strategy, double theta, std::size_t run);

struct MeasuredGraph {
    NeighbourhoodFunction mean;
    std::vector<double> nf_rsd;          // per-t, from average_runs
    double reachable_rse = 0.0;          // relative standard error of the averaged N(T)
    double mean_distance_rse = 0.0;      // over per-run mean distances
    double harmonic_rse = 0.0;           // over per-run harmonic diameters
    double reachable_single_rsd = 0.0;   // per-run relative standard deviation of N(T)
};

struct ExperimentCell {
    std::string strategy;
    double theta = 0.0;
    double achieved_fraction = 0.0;
    std::size_t removed_nodes = 0;
    std::size_t removed_arcs = 0;
    DivergenceReport report;
    MeasuredGraph measured;
    bool ok = true;
    std::string error;
};

struct ExperimentResult {
    MeasuredGraph baseline;
    Engine engine_used = Engine::Exact;
    std::vector<ExperimentCell> cells;  // theta = 0 row first for every strategy
    std::vector<std::string> warnings;
    /// Kendall's tau between the PageRank and label-propagation rankings, when both ran.
    std::optional<double> kendall_pagerank_lp;

    bool all_ok() const;
};

struct ExperimentInput {
    DirectedGraph graph;
    std::vector<std::string> urls;  // empty when no metadata
};

/**
 * Runs every (strategy, theta) cell. Rows are appended to
 * out_dir/results.csv as they complete when an output directory is set.
 */
ExperimentResult run_experiment(const ExperimentInput &input, const ExperimentConfig &cfg);

/// Measures one graph with the configured engine and runs.
MeasuredGraph measure(const DirectedGraph &g, Engine engine, std::size_t runs, int register_bits,
                      std::uint64_t base_seed, const std::string &strategy, double theta);

std::vector<std::string> results_header();
std::vector<std::string> results_row(const std::string &graph_name, const ExperimentCell &cell);

/**
 * Writes distributions/<strategy>_<theta>.csv (t,N,H,h) for every cell plus the
 * baseline, and divergence_<strategy>.csv with each measure against theta.
 * Returns the written paths; nothing is written for an empty cell list.
 */
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path &out_dir,
                                                  const ExperimentResult &result);

void save_ranking(std::ostream &out, const NodeRanking &ranking);
void save_ranking(const std::filesystem::path &path, const NodeRanking &ranking);
/// Throws unless the content is a permutation of 0..n-1.
NodeRanking load_ranking(std::istream &in, std::size_t n);
NodeRanking load_ranking(const std::filesystem::path &path, std::size_t n);

std::vector<std::string> load_urls(const std::filesystem::path &path);

}  // namespace robustness
