#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "robustness/graph.hpp"

namespace robustness {

/// Uniform integer in [0, bound) from a 64-bit engine, independent of the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound);

NodeRanking random_order(std::size_t n, std::uint64_t seed);

/// Decreasing outdegree, ties by ascending id.
NodeRanking degree_order(const DirectedGraph &g);

struct NearRootRanking {
    NodeRanking ranking;
    std::size_t unparsable = 0;
};

struct UrlParts {
    std::string host;
    std::size_t depth = 0;  // non-empty path segments after the host
};

/// Splits scheme://host/path; returns false when the URL has no scheme or host.
bool parse_url(const std::string &url, UrlParts &out);

/// Shallow pages first (root = depth 0), then host, then id. Unparsable URLs go last.
NearRootRanking near_root_order(const std::vector<std::string> &urls);

struct PageRankOptions {
    double damping = 0.85;
    double tolerance = 1e-8;
    std::size_t max_iterations = 10000;
};

struct PageRankResult {
    std::vector<double> scores;
    NodeRanking ranking;
    std::size_t iterations = 0;
};

/// One power-iteration step with uniform teleport and dangling mass spread uniformly.
std::vector<double> pagerank_step(const DirectedGraph &g, const DirectedGraph &gt,
                                  const std::vector<double> &scores, double damping);

PageRankResult pagerank_order(const DirectedGraph &g, const PageRankOptions &opts = {});

/// Node ids sorted by descending score, ascending id on ties.
NodeRanking order_by_score(const std::vector<double> &scores);

struct Clustering {
    std::vector<NodeId> labels;
    std::size_t rounds = 0;  // rounds actually run

    std::size_t num_clusters() const;
    /// Clusters as sorted member lists, ordered by smallest member.
    std::vector<std::vector<NodeId>> clusters() const;
};

/**
 * Asynchronous label propagation on a symmetric graph. Each round visits
 * nodes in a fresh random order; a node keeps its label when it ties for the
 * neighbourhood majority, otherwise it takes one of the majority labels at
 * random. Stops after a round without changes or after max_rounds.
 */
Clustering label_propagation(const DirectedGraph &symmetric, std::uint64_t seed, std::size_t max_rounds = 100);

/// Neighbours (in the symmetric graph) carrying a different label.
std::vector<std::size_t> external_degrees(const DirectedGraph &symmetric, const Clustering &clustering);

/**
 * Round-robin over clusters by decreasing size: pass k emits the k-th node of
 * every cluster, nodes within a cluster sorted by decreasing external degree.
 */
NodeRanking lp_order(const DirectedGraph &symmetric, const Clustering &clustering);

/// Kendall's tau-b between two rankings of the same nodes (by position).
double kendall_tau(const NodeRanking &a, const NodeRanking &b);

}  // namespace robustness
