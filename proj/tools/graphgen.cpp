// Writes synthetic test graphs as edge lists.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "robustness/synthetic.hpp"

using namespace robustness;

int main(int argc, char **argv) {
    CLI::App app{"Synthetic graph generator"};
    app.require_subcommand(1);

    std::string out_path, urls_path;
    std::uint64_t seed = 1;
    app.add_option("--out", out_path, "Edge list output")->required();
    app.add_option("--seed", seed, "Generator seed");

    synthetic::WebLikeOptions web;
    auto *web_cmd = app.add_subcommand("web", "Hierarchical web-like graph with URL metadata");
    web_cmd->add_option("--sites", web.sites);
    web_cmd->add_option("--pages", web.pages_per_site);
    web_cmd->add_option("--branching", web.branching);
    web_cmd->add_option("--cross", web.cross_link_probability, "Probability of a cross-site link per page");
    web_cmd->add_option("--home", web.home_link_probability, "Probability of a link back to the site root");
    web_cmd->add_option("--root-share", web.root_share, "Share of cross links aimed at roots");
    web_cmd->add_option("--urls", urls_path, "URL metadata output")->required();

    std::size_t n = 1000, arcs = 0;
    double degree = 5.0, rewire = 0.3;
    auto *er_cmd = app.add_subcommand("er", "Uniform random directed graph");
    er_cmd->add_option("--nodes", n);
    er_cmd->add_option("--degree", degree, "Mean outdegree");

    auto *social_cmd = app.add_subcommand("social", "Symmetric small-world graph");
    social_cmd->add_option("--nodes", n);
    social_cmd->add_option("--arcs", arcs, "Target arc count (default 6n)");
    social_cmd->add_option("--rewire", rewire);

    CLI11_PARSE(app, argc, argv);

    try {
        DirectedGraph g;
        if (*web_cmd) {
            auto w = synthetic::web_like(web, seed);
            std::ofstream urls(urls_path);
            for (const auto &u : w.urls) urls << u << '\n';
            g = std::move(w.graph);
        } else if (*er_cmd) {
            g = synthetic::erdos_renyi(n, degree, seed);
        } else {
            g = synthetic::social_like(n, arcs ? arcs : 6 * n, rewire, seed);
        }
        std::ofstream out(out_path);
        out << "# n=" << g.num_nodes() << " m=" << g.num_arcs() << '\n';
        synthetic::write_edge_list(out, g);
        std::cerr << "n=" << g.num_nodes() << " m=" << g.num_arcs() << '\n';
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
