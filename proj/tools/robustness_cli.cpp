// Runs node-removal robustness experiments on an edge-list graph.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "robustness/csv.hpp"
#include "robustness/harness.hpp"

using namespace robustness;

int main(int argc, char **argv) {
    CLI::App app{"Measure how node removal strategies change reachability and distances"};

    std::string graph_path, urls_path, engine = "auto", out_dir = "robustness-out";
    ExperimentConfig cfg;
    app.add_option("--graph", graph_path, "Edge list (one 'src dst' arc per line)")->required()->check(CLI::ExistingFile);
    app.add_option("--urls", urls_path, "URL per compacted node, for the nearroot strategy")->check(CLI::ExistingFile);
    app.add_option("--strategies", cfg.strategies, "random,degree,nearroot,pagerank,lp")->delimiter(',');
    app.add_option("--theta", cfg.thetas, "Fractions of arcs to remove")->delimiter(',');
    app.add_option("--runs", cfg.runs, "Estimator runs per cell");
    app.add_option("--registers", cfg.register_bits, "log2 of registers per counter");
    app.add_option("--seed", cfg.seed, "Base seed");
    app.add_option("--engine", engine, "exact, approx or auto")->check(CLI::IsMember({"exact", "approx", "auto"}));
    app.add_option("--exact-threshold", cfg.exact_threshold, "Largest n measured exactly under --engine auto");
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--symmetrize", cfg.symmetrize, "Treat the graph as undirected");
    app.add_flag("--reuse-rankings", cfg.reuse_rankings, "Load rankings cached in OUT/rankings");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (const char *threads = std::getenv("ROBUSTNESS_THREADS")) {
        const int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
    }
#endif

    try {
        cfg.engine = parse_engine(engine);
        cfg.out_dir = out_dir;
        cfg.graph_name = std::filesystem::path(graph_path).stem().string();
        validate(cfg);

        ExperimentInput input;
        input.graph = load_edge_list_file(graph_path).graph;
        if (!urls_path.empty()) input.urls = load_urls(urls_path);
        std::cerr << "loaded " << cfg.graph_name << ": n=" << input.graph.num_nodes()
                  << " m=" << input.graph.num_arcs() << '\n';

        const auto result = run_experiment(input, cfg);
        const auto files = emit_plot_data(*cfg.out_dir, result);
        if (files.empty()) std::cerr << "warning: no cells, no plot data written\n";
        for (const auto &w : result.warnings) std::cerr << "warning: " << w << '\n';

        std::printf("engine=%s reachable_pairs=%s\n", to_string(result.engine_used).c_str(),
                    csv::number(result.baseline.mean.reachable_pairs()).c_str());
        std::printf("%-10s %6s %9s %9s %10s %9s\n", "strategy", "theta", "reach%", "delta", "delta_harm", "kl");
        for (const auto &c : result.cells) {
            if (!c.ok) {
                std::printf("%-10s %6.2f  failed: %s\n", c.strategy.c_str(), c.theta, c.error.c_str());
                continue;
            }
            std::printf("%-10s %6.2f %9.3f %9.4f %10.4f %9.5f\n", c.strategy.c_str(), c.theta, c.report.reachable_pct,
                        c.report.delta_avg, c.report.delta_harm, c.report.kl);
        }
        if (result.kendall_pagerank_lp)
            std::printf("kendall tau (pagerank vs lp): %.4f\n", *result.kendall_pagerank_lp);
        return result.all_ok() ? 0 : 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
