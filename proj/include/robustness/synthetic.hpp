#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robustness/graph.hpp"

namespace robustness::synthetic {

/// Directed G(n, m)-style graph: n * mean_outdegree uniformly drawn arcs (duplicates and loops dropped).
DirectedGraph erdos_renyi(std::size_t n, double mean_outdegree, std::uint64_t seed);

struct WebLikeOptions {
    std::size_t sites = 200;
    std::size_t pages_per_site = 100;
    std::size_t branching = 4;
    /// Probability that a page carries a link to another site.
    double cross_link_probability = 0.3;
    /// Among cross links, the share aimed at the other site's root (the rest hit its depth-1 pages).
    double root_share = 0.8;
    /// Probability that a page below the top level also links to its site's root.
    double home_link_probability = 0.0;
};

struct WebLikeGraph {
    DirectedGraph graph;
    std::vector<std::string> urls;  // one per node
};

/**
 * Sites are trees of pages: parent links to children and every page links back
 * to its parent (deeper pages optionally to the site root as well). Some pages
 * link to the root or a top-level page of another random site. URLs mirror the
 * tree paths.
 */
WebLikeGraph web_like(const WebLikeOptions &opts, std::uint64_t seed);

/**
 * Symmetric Watts-Strogatz ring (each node joined to k neighbours per side,
 * every edge rewired with the given probability), topped up with random
 * symmetric edges until at least target_arcs arcs exist.
 */
DirectedGraph social_like(std::size_t n, std::size_t target_arcs, double rewire, std::uint64_t seed);

void write_edge_list(std::ostream &out, const DirectedGraph &g);

}  // namespace robustness::synthetic
