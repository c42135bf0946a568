#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace robustness {

using NodeId = std::uint32_t;
using Arc = std::pair<NodeId, NodeId>;

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/**
 * Immutable directed graph in compressed (CSR) form.
 *
 * Successor lists are sorted, free of duplicates and self-loops. Nodes can be
 * marked as removed: a removed node keeps its id but has no incident arcs and
 * does not count as part of the graph for reachability purposes.
 */
class DirectedGraph {
  public:
    DirectedGraph() = default;

    /// Builds a graph on n nodes. Arcs are sorted and deduplicated, self-loops dropped.
    static DirectedGraph from_arcs(std::size_t n, std::vector<Arc> arcs);

    std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_arcs() const { return targets_.size(); }

    /// Nodes not removed.
    std::size_t num_live_nodes() const { return live_count_; }
    bool is_live(NodeId x) const { return removed_.empty() || !removed_[x]; }

    std::span<const NodeId> successors(NodeId x) const {
        return {targets_.data() + offsets_[x], targets_.data() + offsets_[x + 1]};
    }
    std::size_t outdegree(NodeId x) const { return offsets_[x + 1] - offsets_[x]; }

    bool has_arc(NodeId x, NodeId y) const;
    std::vector<Arc> arcs() const;

    /// Copy of this graph with the flagged nodes (and all their arcs) removed.
    DirectedGraph without_nodes(const std::vector<bool> &removed) const;

    friend bool operator==(const DirectedGraph &a, const DirectedGraph &b) = default;

  private:
    std::vector<std::uint64_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<bool> removed_;  // empty when nothing was removed
    std::size_t live_count_ = 0;
};

/// A graph read from an edge list, with the original id of each compacted node.
struct LoadedGraph {
    DirectedGraph graph;
    std::vector<std::uint64_t> original_ids;  // indexed by compacted id
};

/**
 * Reads "src dst" lines. Blank lines and lines starting with '#' are skipped.
 * Ids are compacted to 0..n-1 preserving their relative order.
 */
LoadedGraph load_edge_list(std::istream &in);
LoadedGraph load_edge_list_file(const std::string &path);

/// Adds y->x for every arc x->y.
DirectedGraph symmetrize(const DirectedGraph &g);
DirectedGraph transpose(const DirectedGraph &g);
bool is_symmetric(const DirectedGraph &g);

/// Total removal order: position 0 holds the first node to be removed.
class NodeRanking {
  public:
    NodeRanking() = default;
    /// Throws std::invalid_argument unless order is a permutation of 0..order.size()-1.
    explicit NodeRanking(std::vector<NodeId> order);

    std::size_t size() const { return order_.size(); }
    NodeId operator[](std::size_t i) const { return order_[i]; }
    const std::vector<NodeId> &order() const { return order_; }

    friend bool operator==(const NodeRanking &, const NodeRanking &) = default;

  private:
    std::vector<NodeId> order_;
};

bool is_permutation_of_nodes(std::span<const NodeId> order, std::size_t n);

struct RemovalOutcome {
    DirectedGraph graph;  // removed nodes stay as isolated, non-live ids
    std::size_t removed_nodes = 0;
    std::size_t removed_arcs = 0;
    double achieved_fraction = 0.0;  // removed_arcs / original m (0 when m == 0)
};

/**
 * Deletes nodes in ranking order until at least theta * m arcs are gone.
 *
 * Each deleted node is charged for its incident arcs (in and out) whose other
 * endpoint is still present, so every arc is charged exactly once. theta == 1
 * deletes every node.
 */
RemovalOutcome apply_removal(const DirectedGraph &g, const NodeRanking &ranking, double theta);

}  // namespace robustness
