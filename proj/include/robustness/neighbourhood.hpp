#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "robustness/graph.hpp"

namespace robustness {

/**
 * N(t): number of ordered pairs (x, y) with y reachable from x in at most t
 * steps. Stored up to the last t at which the function still grows, so
 * values.back() is the number of reachable pairs.
 */
struct NeighbourhoodFunction {
    std::vector<double> values;
    std::size_t n = 0;  // live nodes of the measured graph

    std::size_t last() const { return values.empty() ? 0 : values.size() - 1; }
    double reachable_pairs() const { return values.empty() ? 0.0 : values.back(); }
    double at(std::size_t t) const { return t < values.size() ? values[t] : reachable_pairs(); }
};

/// Exact neighbourhood function by breadth-first visits from every live node.
NeighbourhoodFunction exact_neighbourhood(const DirectedGraph &g);

/// Approximate neighbourhood function from iterated HyperLogLog unions (2^p registers).
NeighbourhoodFunction approx_neighbourhood(const DirectedGraph &g, int p, std::uint64_t seed);

struct AveragedNeighbourhood {
    NeighbourhoodFunction mean;
    std::vector<double> rsd;  // per-t sample standard deviation over mean
};

/// Pointwise mean of several runs; shorter runs are padded with their final value.
AveragedNeighbourhood average_runs(const std::vector<NeighbourhoodFunction> &runs);

struct DistanceDistribution {
    std::vector<double> cumulative;  // H(t) = N(t) / N(T)
    std::vector<double> density;     // h(t) = H(t) - H(t-1), h(0) = H(0)
    double reachable_pairs = 0.0;
    std::optional<double> mean_distance;  // over pairs at distance >= 1

    /// Density over distances t >= 1 (index 0 holds t = 1), renormalised; empty without such pairs.
    std::vector<double> positive_density;
};

/// Throws std::invalid_argument when N(T) <= 0.
DistanceDistribution distance_distribution(const NeighbourhoodFunction &nf);

/// Mean distance over pairs at distance >= 1; empty when there are none.
std::optional<double> mean_distance(const NeighbourhoodFunction &nf);

/// CSV with columns t,N,H,h.
void write_distribution_csv(std::ostream &out, const NeighbourhoodFunction &nf);

}  // namespace robustness
