#include "robustness/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>

namespace robustness {

DirectedGraph DirectedGraph::from_arcs(std::size_t n, std::vector<Arc> arcs) {
    for (const auto &[x, y] : arcs) {
        if (x >= n || y >= n)
            throw std::invalid_argument("arc endpoint out of range");
    }
    std::erase_if(arcs, [](const Arc &a) { return a.first == a.second; });
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    DirectedGraph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto &a : arcs) g.offsets_[a.first + 1]++;
    for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.targets_.reserve(arcs.size());
    for (const auto &a : arcs) g.targets_.push_back(a.second);
    g.live_count_ = n;
    return g;
}

bool DirectedGraph::has_arc(NodeId x, NodeId y) const {
    auto succ = successors(x);
    return std::binary_search(succ.begin(), succ.end(), y);
}

std::vector<Arc> DirectedGraph::arcs() const {
    std::vector<Arc> out;
    out.reserve(num_arcs());
    for (NodeId x = 0; x < num_nodes(); ++x)
        for (NodeId y : successors(x)) out.emplace_back(x, y);
    return out;
}

DirectedGraph DirectedGraph::without_nodes(const std::vector<bool> &removed) const {
    const std::size_t n = num_nodes();
    if (removed.size() != n) throw std::invalid_argument("removal mask size mismatch");

    DirectedGraph g;
    g.offsets_.assign(n + 1, 0);
    g.removed_.assign(n, false);
    g.live_count_ = 0;
    for (NodeId x = 0; x < n; ++x) {
        const bool gone = removed[x] || !is_live(x);
        g.removed_[x] = gone;
        if (!gone) {
            g.live_count_++;
            for (NodeId y : successors(x))
                if (!removed[y]) g.targets_.push_back(y);
        }
        g.offsets_[x + 1] = g.targets_.size();
    }
    return g;
}

namespace {

bool parse_id(std::string_view token, std::uint64_t &out) {
    const char *end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

LoadedGraph load_edge_list(std::istream &in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view rest(line);
        auto skip_ws = [&] {
            while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front())))
                rest.remove_prefix(1);
        };
        auto next_token = [&] {
            skip_ws();
            std::size_t len = 0;
            while (len < rest.size() && !std::isspace(static_cast<unsigned char>(rest[len]))) ++len;
            auto tok = rest.substr(0, len);
            rest.remove_prefix(len);
            return tok;
        };

        skip_ws();
        if (rest.empty() || rest.front() == '#') continue;

        std::uint64_t src = 0, dst = 0;
        auto a = next_token();
        auto b = next_token();
        skip_ws();
        if (b.empty() || !rest.empty())
            throw ParseError(lineno, "expected two node ids");
        if (!parse_id(a, src) || !parse_id(b, dst))
            throw ParseError(lineno, "node ids must be non-negative integers");
        raw.emplace_back(src, dst);
    }
    if (raw.empty()) throw std::invalid_argument("edge list is empty");

    // Compacted ids follow the order of the original ids, so dense inputs keep their numbering.
    LoadedGraph result;
    auto &ids = result.original_ids;
    ids.reserve(2 * raw.size());
    for (const auto &[s, d] : raw) {
        ids.push_back(s);
        ids.push_back(d);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > std::numeric_limits<NodeId>::max())
        throw std::invalid_argument("too many nodes");

    auto compact = [&](std::uint64_t v) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    };
    std::vector<Arc> arcs;
    arcs.reserve(raw.size());
    for (const auto &[s, d] : raw) arcs.emplace_back(compact(s), compact(d));

    result.graph = DirectedGraph::from_arcs(ids.size(), std::move(arcs));
    return result;
}

LoadedGraph load_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_edge_list(in);
}

DirectedGraph symmetrize(const DirectedGraph &g) {
    auto arcs = g.arcs();
    const std::size_t m = arcs.size();
    arcs.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) arcs.emplace_back(arcs[i].second, arcs[i].first);
    return DirectedGraph::from_arcs(g.num_nodes(), std::move(arcs));
}

DirectedGraph transpose(const DirectedGraph &g) {
    auto arcs = g.arcs();
    for (auto &a : arcs) std::swap(a.first, a.second);
    return DirectedGraph::from_arcs(g.num_nodes(), std::move(arcs));
}

bool is_symmetric(const DirectedGraph &g) {
    for (NodeId x = 0; x < g.num_nodes(); ++x)
        for (NodeId y : g.successors(x))
            if (!g.has_arc(y, x)) return false;
    return true;
}

bool is_permutation_of_nodes(std::span<const NodeId> order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (NodeId x : order) {
        if (x >= n || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

NodeRanking::NodeRanking(std::vector<NodeId> order) : order_(std::move(order)) {
    if (!is_permutation_of_nodes(order_, order_.size()))
        throw std::invalid_argument("ranking is not a permutation of the node ids");
}

RemovalOutcome apply_removal(const DirectedGraph &g, const NodeRanking &ranking, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
    const std::size_t n = g.num_nodes();
    if (ranking.size() != n) throw std::invalid_argument("ranking does not cover the graph");

    const std::size_t m = g.num_arcs();
    const double target = theta * static_cast<double>(m);
    const DirectedGraph gt = transpose(g);

    std::vector<bool> removed(n, false);
    RemovalOutcome out;
    for (std::size_t i = 0; i < n; ++i) {
        if (theta < 1.0 && static_cast<double>(out.removed_arcs) >= target) break;
        const NodeId x = ranking[i];
        for (NodeId y : g.successors(x))
            if (!removed[y]) out.removed_arcs++;
        for (NodeId y : gt.successors(x))
            if (!removed[y]) out.removed_arcs++;
        removed[x] = true;
        out.removed_nodes++;
    }

    out.graph = out.removed_nodes == 0 ? g : g.without_nodes(removed);
    out.achieved_fraction = m == 0 ? 0.0 : static_cast<double>(out.removed_arcs) / static_cast<double>(m);
    return out;
}

}  // namespace robustness
