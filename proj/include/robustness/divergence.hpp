#pragma once

#include <span>
#include <vector>

#include "robustness/neighbourhood.hpp"

namespace robustness {

/// 100 * reachable pairs after / reachable pairs before.
double reachable_ratio(const NeighbourhoodFunction &before, const NeighbourhoodFunction &after);

/// mu_Q / mu_P - 1 on mean distances.
double delta(const DistanceDistribution &p, const DistanceDistribution &q);

/// n(n-1) over the sum of reciprocal distances; +inf when no pair is at distance >= 1.
double harmonic_diameter(const NeighbourhoodFunction &nf, std::size_t n);

/// Relative change of the harmonic diameter; +inf when the graph after removal has no connected pair.
double delta_harmonic(const NeighbourhoodFunction &before, std::size_t n_before,
                      const NeighbourhoodFunction &after, std::size_t n_after);

inline constexpr double kKlSmoothing = 1e-9;

/**
 * KL(P || Q) in bits. Both densities are zero-padded to a common length, get
 * kKlSmoothing added to every entry and are renormalised. Negative entries
 * (estimator noise) are clamped to zero first.
 */
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// (sum |P(t) - Q(t)|^order)^(1/order) over zero-padded densities; order is 1 or 2.
double lp_norm(std::span<const double> p, std::span<const double> q, int order);

/// Kendall's tau-b over paired samples (ties handled); NaN when either side is constant.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

/// Measures of one post-removal graph against the original. Undefined values are NaN.
struct DivergenceReport {
    double reachable_pct = 0.0;
    double delta_avg = 0.0;
    double harm_before = 0.0;
    double harm_after = 0.0;
    double delta_harm = 0.0;
    double kl = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
};

DivergenceReport compare(const NeighbourhoodFunction &before, const NeighbourhoodFunction &after);

}  // namespace robustness
