#include "robustness/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robustness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double reachable_ratio(const NeighbourhoodFunction &before, const NeighbourhoodFunction &after) {
    const double initial = before.reachable_pairs();
    if (!(initial > 0.0)) throw std::invalid_argument("no reachable pairs in the original graph");
    return 100.0 * after.reachable_pairs() / initial;
}

double delta(const DistanceDistribution &p, const DistanceDistribution &q) {
    if (!p.mean_distance || *p.mean_distance == 0.0)
        throw std::invalid_argument("reference mean distance undefined");
    if (!q.mean_distance) throw std::invalid_argument("mean distance undefined");
    return *q.mean_distance / *p.mean_distance - 1.0;
}

double harmonic_diameter(const NeighbourhoodFunction &nf, std::size_t n) {
    double reciprocal = 0.0;
    for (std::size_t t = 1; t < nf.values.size(); ++t)
        reciprocal += (nf.values[t] - nf.values[t - 1]) / static_cast<double>(t);
    if (!(reciprocal > 0.0)) return kInf;
    const double nd = static_cast<double>(n);
    return nd * (nd - 1.0) / reciprocal;
}

double delta_harmonic(const NeighbourhoodFunction &before, std::size_t n_before,
                      const NeighbourhoodFunction &after, std::size_t n_after) {
    const double hb = harmonic_diameter(before, n_before);
    if (std::isinf(hb)) throw std::invalid_argument("harmonic diameter of the original graph is infinite");
    const double ha = harmonic_diameter(after, n_after);
    if (std::isinf(ha)) return kInf;
    return ha / hb - 1.0;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    const std::size_t len = std::max(p.size(), q.size());
    if (len == 0) return 0.0;
    std::vector<double> ps(len), qs(len);
    double psum = 0.0, qsum = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        ps[t] = (t < p.size() ? std::max(p[t], 0.0) : 0.0) + kKlSmoothing;
        qs[t] = (t < q.size() ? std::max(q[t], 0.0) : 0.0) + kKlSmoothing;
        psum += ps[t];
        qsum += qs[t];
    }
    double kl = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        const double pt = ps[t] / psum;
        kl += pt * std::log2(pt / (qs[t] / qsum));
    }
    return kl;
}

double lp_norm(std::span<const double> p, std::span<const double> q, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("only l1 and l2 are supported");
    const std::size_t len = std::max(p.size(), q.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        const double d = std::abs((t < p.size() ? p[t] : 0.0) - (t < q.size() ? q[t] : 0.0));
        acc += order == 1 ? d : d * d;
    }
    return order == 1 ? acc : std::sqrt(acc);
}

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("samples differ in length");
    double concordant = 0.0, discordant = 0.0, ties_a = 0.0, ties_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0 && db == 0.0) continue;
            if (da == 0.0) {
                ties_a += 1.0;
            } else if (db == 0.0) {
                ties_b += 1.0;
            } else if ((da > 0.0) == (db > 0.0)) {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    }
    const double denom = std::sqrt((concordant + discordant + ties_a) * (concordant + discordant + ties_b));
    if (denom == 0.0) return kNaN;
    return (concordant - discordant) / denom;
}

DivergenceReport compare(const NeighbourhoodFunction &before, const NeighbourhoodFunction &after) {
    DivergenceReport r;
    r.reachable_pct = reachable_ratio(before, after);

    const auto p = distance_distribution(before);
    const bool after_has_pairs = after.reachable_pairs() > 0.0;
    const auto q = after_has_pairs ? distance_distribution(after) : DistanceDistribution{};

    r.delta_avg = p.mean_distance && *p.mean_distance != 0.0 && q.mean_distance ? delta(p, q) : kNaN;

    r.harm_before = harmonic_diameter(before, before.n);
    r.harm_after = harmonic_diameter(after, after.n);
    r.delta_harm = std::isinf(r.harm_before) ? kNaN : delta_harmonic(before, before.n, after, after.n);

    if (!p.positive_density.empty() && !q.positive_density.empty()) {
        r.kl = kl_divergence(p.positive_density, q.positive_density);
        r.l1 = lp_norm(p.positive_density, q.positive_density, 1);
        r.l2 = lp_norm(p.positive_density, q.positive_density, 2);
    } else {
        r.kl = r.l1 = r.l2 = kNaN;
    }
    return r;
}

}  // namespace robustness
