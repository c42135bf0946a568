#include "robustness/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace robustness {

std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

NodeRanking random_order(std::size_t n, std::uint64_t seed) {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
    return NodeRanking(std::move(order));
}

NodeRanking degree_order(const DirectedGraph &g) {
    std::vector<NodeId> order(g.num_nodes());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return g.outdegree(a) > g.outdegree(b); });
    return NodeRanking(std::move(order));
}

bool parse_url(const std::string &url, UrlParts &out) {
    const auto sep = url.find("://");
    if (sep == std::string::npos || sep == 0) return false;
    for (std::size_t i = 0; i < sep; ++i) {
        const auto c = static_cast<unsigned char>(url[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    const std::size_t host_begin = sep + 3;
    const std::size_t host_end = url.find_first_of("/?#", host_begin);
    std::string host = url.substr(host_begin, host_end == std::string::npos ? std::string::npos : host_end - host_begin);
    if (host.empty()) return false;
    for (char c : host)
        if (std::isspace(static_cast<unsigned char>(c))) return false;

    std::size_t depth = 0;
    if (host_end != std::string::npos && url[host_end] == '/') {
        const std::size_t path_end = url.find_first_of("?#", host_end);
        const std::string path = url.substr(host_end, path_end == std::string::npos ? std::string::npos : path_end - host_end);
        bool in_segment = false;
        for (char c : path) {
            if (c == '/') {
                in_segment = false;
            } else if (!in_segment) {
                in_segment = true;
                ++depth;
            }
        }
    }
    out.host = std::move(host);
    out.depth = depth;
    return true;
}

NearRootRanking near_root_order(const std::vector<std::string> &urls) {
    constexpr std::size_t kUnparsed = std::numeric_limits<std::size_t>::max();
    std::vector<UrlParts> parts(urls.size());
    NearRootRanking result;
    for (std::size_t i = 0; i < urls.size(); ++i) {
        if (!parse_url(urls[i], parts[i])) {
            parts[i] = {std::string(), kUnparsed};
            result.unparsable++;
        }
    }
    std::vector<NodeId> order(urls.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (parts[a].depth != parts[b].depth) return parts[a].depth < parts[b].depth;
        if (parts[a].host != parts[b].host) return parts[a].host < parts[b].host;
        return a < b;
    });
    result.ranking = NodeRanking(std::move(order));
    return result;
}

std::vector<double> pagerank_step(const DirectedGraph &g, const DirectedGraph &gt,
                                  const std::vector<double> &scores, double damping) {
    const std::size_t n = g.num_nodes();
    double dangling = 0.0;
    for (NodeId x = 0; x < n; ++x)
        if (g.outdegree(x) == 0) dangling += scores[x];
    const double base = ((1.0 - damping) + damping * dangling) / static_cast<double>(n);

    std::vector<double> next(n);
#pragma omp parallel for schedule(static)
    for (std::size_t x = 0; x < n; ++x) {
        double in = 0.0;
        for (NodeId y : gt.successors(static_cast<NodeId>(x)))
            in += scores[y] / static_cast<double>(g.outdegree(y));
        next[x] = base + damping * in;
    }
    return next;
}

NodeRanking order_by_score(const std::vector<double> &scores) {
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
    return NodeRanking(std::move(order));
}

PageRankResult pagerank_order(const DirectedGraph &g, const PageRankOptions &opts) {
    if (!(opts.damping > 0.0 && opts.damping < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
    const std::size_t n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("PageRank of an empty graph");
    const DirectedGraph gt = transpose(g);

    PageRankResult result;
    result.scores.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        auto next = pagerank_step(g, gt, result.scores, opts.damping);
        // Renormalise against accumulated rounding.
        const double sum = std::accumulate(next.begin(), next.end(), 0.0);
        double change = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            next[x] /= sum;
            change += std::abs(next[x] - result.scores[x]);
        }
        result.scores = std::move(next);
        result.iterations = it;
        if (change < opts.tolerance) {
            result.ranking = order_by_score(result.scores);
            return result;
        }
    }
    throw std::runtime_error("PageRank did not converge");
}

std::size_t Clustering::num_clusters() const {
    std::vector<NodeId> l = labels;
    std::sort(l.begin(), l.end());
    return static_cast<std::size_t>(std::unique(l.begin(), l.end()) - l.begin());
}

std::vector<std::vector<NodeId>> Clustering::clusters() const {
    std::vector<std::vector<NodeId>> by_label(labels.size());
    for (NodeId x = 0; x < labels.size(); ++x) by_label[labels[x]].push_back(x);
    std::vector<std::vector<NodeId>> out;
    for (auto &members : by_label)
        if (!members.empty()) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.front() < b.front(); });
    return out;
}

Clustering label_propagation(const DirectedGraph &g, std::uint64_t seed, std::size_t max_rounds) {
    if (!is_symmetric(g)) throw std::invalid_argument("label propagation needs a symmetric graph");
    const std::size_t n = g.num_nodes();

    Clustering c;
    c.labels.resize(n);
    std::iota(c.labels.begin(), c.labels.end(), NodeId{0});

    std::mt19937_64 rng(seed);
    std::vector<NodeId> visit(n);
    std::iota(visit.begin(), visit.end(), NodeId{0});
    std::vector<std::uint32_t> tally(n, 0);
    std::vector<NodeId> seen, best;

    for (std::size_t round = 0; round < max_rounds; ++round) {
        for (std::size_t i = n; i > 1; --i) std::swap(visit[i - 1], visit[uniform_below(rng, i)]);
        c.rounds = round + 1;

        bool changed = false;
        for (NodeId x : visit) {
            auto nbrs = g.successors(x);
            if (nbrs.empty()) continue;
            seen.clear();
            for (NodeId y : nbrs) {
                if (tally[c.labels[y]]++ == 0) seen.push_back(c.labels[y]);
            }
            std::uint32_t top = 0;
            for (NodeId l : seen) top = std::max(top, tally[l]);
            best.clear();
            for (NodeId l : seen)
                if (tally[l] == top) best.push_back(l);
            const bool keep = tally[c.labels[x]] == top;
            for (NodeId l : seen) tally[l] = 0;
            if (keep) continue;

            // seen preserves first-encounter order over sorted neighbours, so the draw is reproducible.
            const NodeId chosen = best.size() == 1 ? best[0] : best[uniform_below(rng, best.size())];
            c.labels[x] = chosen;
            changed = true;
        }
        if (!changed) break;
    }
    return c;
}

std::vector<std::size_t> external_degrees(const DirectedGraph &g, const Clustering &clustering) {
    if (clustering.labels.size() != g.num_nodes())
        throw std::invalid_argument("clustering does not cover the graph");
    std::vector<std::size_t> ext(g.num_nodes(), 0);
    for (NodeId x = 0; x < g.num_nodes(); ++x)
        for (NodeId y : g.successors(x))
            if (clustering.labels[y] != clustering.labels[x]) ext[x]++;
    return ext;
}

NodeRanking lp_order(const DirectedGraph &g, const Clustering &clustering) {
    if (clustering.labels.size() != g.num_nodes())
        throw std::invalid_argument("clustering node set differs from the graph's");
    const DirectedGraph sym = is_symmetric(g) ? g : symmetrize(g);
    const auto ext = external_degrees(sym, clustering);

    auto clusters = clustering.clusters();
    for (auto &members : clusters) {
        std::stable_sort(members.begin(), members.end(), [&](NodeId a, NodeId b) { return ext[a] > ext[b]; });
    }
    // clusters() is ordered by smallest member, which is the size tie-break.
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const auto &a, const auto &b) { return a.size() > b.size(); });

    std::vector<NodeId> order;
    order.reserve(g.num_nodes());
    for (std::size_t k = 0; order.size() < g.num_nodes(); ++k) {
        for (const auto &members : clusters)
            if (k < members.size()) order.push_back(members[k]);
    }
    return NodeRanking(std::move(order));
}

namespace {

std::uint64_t count_inversions(std::vector<std::size_t> &v, std::vector<std::size_t> &tmp, std::size_t lo,
                               std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, tmp, lo, mid) + count_inversions(v, tmp, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += mid - i;
            tmp[k++] = v[j++];
        } else {
            tmp[k++] = v[i++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
    return inv;
}

}  // namespace

double kendall_tau(const NodeRanking &a, const NodeRanking &b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("rankings differ in size");
    if (n < 2) return 1.0;
    std::vector<std::size_t> pos_b(n);
    for (std::size_t i = 0; i < n; ++i) pos_b[b[i]] = i;
    // Positions in b listed in a's order; discordant pairs are inversions.
    std::vector<std::size_t> seq(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = pos_b[a[i]];
    const double discordant = static_cast<double>(count_inversions(seq, tmp, 0, n));
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return 1.0 - 2.0 * discordant / pairs;
}

}  // namespace robustness
