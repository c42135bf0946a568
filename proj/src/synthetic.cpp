#include "robustness/synthetic.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "robustness/strategies.hpp"

namespace robustness::synthetic {

namespace {

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

DirectedGraph erdos_renyi(std::size_t n, double mean_outdegree, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need at least two nodes");
    std::mt19937_64 rng(seed);
    const auto draws = static_cast<std::size_t>(mean_outdegree * static_cast<double>(n));
    std::vector<Arc> arcs;
    arcs.reserve(draws);
    for (std::size_t i = 0; i < draws; ++i) {
        auto x = static_cast<NodeId>(uniform_below(rng, n));
        auto y = static_cast<NodeId>(uniform_below(rng, n));
        arcs.emplace_back(x, y);
    }
    return DirectedGraph::from_arcs(n, std::move(arcs));
}

WebLikeGraph web_like(const WebLikeOptions &opts, std::uint64_t seed) {
    if (opts.sites < 2 || opts.pages_per_site < 2 || opts.branching < 1)
        throw std::invalid_argument("degenerate web-like layout");
    const std::size_t pages = opts.pages_per_site;
    const std::size_t n = opts.sites * pages;
    auto node = [&](std::size_t site, std::size_t page) { return static_cast<NodeId>(site * pages + page); };
    auto parent = [&](std::size_t page) { return (page - 1) / opts.branching; };

    // Pages 1..branching are the children of the root.
    const std::size_t top_level = std::min(opts.branching, pages - 1);

    std::mt19937_64 rng(seed);
    std::vector<Arc> arcs;
    WebLikeGraph out;
    out.urls.resize(n);
    for (std::size_t s = 0; s < opts.sites; ++s) {
        const std::string host = "http://site" + std::to_string(s) + ".example.org";
        std::vector<std::string> paths(pages);
        paths[0] = "/";
        for (std::size_t k = 1; k < pages; ++k) {
            const std::size_t up = parent(k);
            paths[k] = paths[up] + "p" + std::to_string(k) + "/";
            arcs.emplace_back(node(s, up), node(s, k));
            arcs.emplace_back(node(s, k), node(s, up));
            if (up != 0 && uniform01(rng) < opts.home_link_probability) arcs.emplace_back(node(s, k), node(s, 0));
        }
        for (std::size_t k = 0; k < pages; ++k) out.urls[node(s, k)] = host + paths[k];

        for (std::size_t k = 0; k < pages; ++k) {
            if (uniform01(rng) >= opts.cross_link_probability) continue;
            std::size_t other = uniform_below(rng, opts.sites - 1);
            if (other >= s) ++other;
            const bool to_root = uniform01(rng) < opts.root_share;
            const std::size_t target = to_root ? 0 : 1 + uniform_below(rng, top_level);
            arcs.emplace_back(node(s, k), node(other, target));
        }
    }
    out.graph = DirectedGraph::from_arcs(n, std::move(arcs));
    return out;
}

DirectedGraph social_like(std::size_t n, std::size_t target_arcs, double rewire, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("need at least four nodes");
    std::mt19937_64 rng(seed);
    const std::size_t k = std::max<std::size_t>(1, target_arcs / (2 * n));

    std::set<std::pair<NodeId, NodeId>> edges;
    auto add_edge = [&](NodeId a, NodeId b) {
        if (a == b) return false;
        return edges.insert(std::minmax(a, b)).second;
    };
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t j = 1; j <= k; ++j) {
            const auto a = static_cast<NodeId>(x);
            auto b = static_cast<NodeId>((x + j) % n);
            if (uniform01(rng) < rewire) {
                do {
                    b = static_cast<NodeId>(uniform_below(rng, n));
                } while (b == a || edges.count(std::minmax(a, b)));
            }
            add_edge(a, b);
        }
    }
    while (2 * edges.size() < target_arcs) {
        add_edge(static_cast<NodeId>(uniform_below(rng, n)), static_cast<NodeId>(uniform_below(rng, n)));
    }

    std::vector<Arc> arcs;
    arcs.reserve(2 * edges.size());
    for (const auto &[a, b] : edges) {
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    return DirectedGraph::from_arcs(n, std::move(arcs));
}

void write_edge_list(std::ostream &out, const DirectedGraph &g) {
    for (NodeId x = 0; x < g.num_nodes(); ++x)
        for (NodeId y : g.successors(x)) out << x << ' ' << y << '\n';
}

}  // namespace robustness::synthetic
