#pragma once

// Reference computations for tests. Deliberately naive and independent of the
// library code paths they check.

#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include "robustness/graph.hpp"

namespace oracle {

using robustness::DirectedGraph;
using robustness::NodeId;

/// Histogram of BFS distances over all ordered live pairs (index = distance).
inline std::vector<std::uint64_t> distance_histogram(const DirectedGraph &g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::uint64_t> hist;
    std::vector<int> dist(n);
    for (NodeId s = 0; s < n; ++s) {
        if (!g.is_live(s)) continue;
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<NodeId> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop();
            const auto d = static_cast<std::size_t>(dist[x]);
            if (hist.size() <= d) hist.resize(d + 1, 0);
            hist[d]++;
            for (NodeId y : g.successors(x)) {
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
            }
        }
    }
    return hist;
}

/// Cumulative pair counts N(0..D) from the BFS histogram.
inline std::vector<double> neighbourhood(const DirectedGraph &g) {
    auto hist = distance_histogram(g);
    std::vector<double> nf;
    double acc = 0;
    for (auto c : hist) nf.push_back(acc += static_cast<double>(c));
    if (nf.empty()) nf.push_back(0.0);
    return nf;
}

/// Arcs of g with neither endpoint in the removed set.
inline std::size_t surviving_arcs(const DirectedGraph &g, const std::set<NodeId> &removed) {
    std::size_t count = 0;
    for (const auto &[x, y] : g.arcs())
        if (!removed.count(x) && !removed.count(y)) ++count;
    return count;
}

}  // namespace oracle
