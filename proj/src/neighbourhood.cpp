#include "robustness/neighbourhood.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "robustness/csv.hpp"
#include "robustness/hll.hpp"

namespace robustness {

namespace {

// Targets handled together by one bit-parallel sweep.
constexpr std::size_t kWords = 4;
constexpr std::size_t kBatch = 64 * kWords;

std::vector<NodeId> live_nodes(const DirectedGraph &g) {
    std::vector<NodeId> live;
    live.reserve(g.num_live_nodes());
    for (NodeId x = 0; x < g.num_nodes(); ++x)
        if (g.is_live(x)) live.push_back(x);
    return live;
}

// Sum of per-batch series, each padded with its final value.
std::vector<double> padded_sum(const std::vector<std::vector<std::uint64_t>> &series) {
    std::size_t len = 1;
    for (const auto &s : series) len = std::max(len, s.size());
    std::vector<std::uint64_t> total(len, 0);
    for (const auto &s : series)
        for (std::size_t t = 0; t < len; ++t) total[t] += t < s.size() ? s[t] : s.back();
    return {total.begin(), total.end()};
}

}  // namespace

NeighbourhoodFunction exact_neighbourhood(const DirectedGraph &g) {
    const std::size_t n = g.num_nodes();
    const std::vector<NodeId> live = live_nodes(g);

    // Bit j of reach[x] is set when the j-th target of the batch lies in the ball around x.
    std::vector<std::uint64_t> cur(n * kWords), next(n * kWords);
    std::vector<std::vector<std::uint64_t>> series;

    for (std::size_t begin = 0; begin < live.size(); begin += kBatch) {
        const std::size_t end = std::min(begin + kBatch, live.size());
        std::fill(cur.begin(), cur.end(), 0);
        for (std::size_t j = begin; j < end; ++j) {
            const std::size_t bit = j - begin;
            cur[live[j] * kWords + bit / 64] |= std::uint64_t{1} << (bit % 64);
        }

        std::vector<std::uint64_t> batch{end - begin};
        for (;;) {
            bool changed = false;
            std::uint64_t step_total = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(|| : changed) reduction(+ : step_total)
            for (std::size_t i = 0; i < live.size(); ++i) {
                const NodeId x = live[i];
                std::uint64_t *dst = &next[x * kWords];
                const std::uint64_t *own = &cur[x * kWords];
                for (std::size_t w = 0; w < kWords; ++w) dst[w] = own[w];
                for (NodeId y : g.successors(x)) {
                    const std::uint64_t *src = &cur[y * kWords];
                    for (std::size_t w = 0; w < kWords; ++w) dst[w] |= src[w];
                }
                for (std::size_t w = 0; w < kWords; ++w) {
                    changed = changed || dst[w] != own[w];
                    step_total += static_cast<std::uint64_t>(std::popcount(dst[w]));
                }
            }
            if (!changed) break;
            batch.push_back(step_total);
            std::swap(cur, next);
        }
        series.push_back(std::move(batch));
    }

    NeighbourhoodFunction nf;
    nf.n = live.size();
    nf.values = series.empty() ? std::vector<double>{0.0} : padded_sum(series);
    return nf;
}

NeighbourhoodFunction approx_neighbourhood(const DirectedGraph &g, int p, std::uint64_t seed) {
    const std::size_t n = g.num_nodes();
    const std::vector<NodeId> live = live_nodes(g);

    CounterArray cur(n, p, seed);
    for (NodeId x : live) cur.add(x, x);
    CounterArray next = cur;

    std::vector<double> estimates(n, 0.0);
    for (NodeId x : live) estimates[x] = cur.estimate(x);
    // Summed serially in node order so the result does not depend on thread scheduling.
    auto total = [&] { return std::accumulate(estimates.begin(), estimates.end(), 0.0); };

    NeighbourhoodFunction nf;
    nf.n = live.size();
    nf.values.push_back(total());

    // Registers are monotone and bounded, so some iteration eventually changes nothing.
    for (;;) {
        bool changed = false;
#pragma omp parallel for schedule(dynamic, 256) reduction(|| : changed)
        for (std::size_t i = 0; i < live.size(); ++i) {
            const NodeId x = live[i];
            auto dst = next.counter(x);
            auto own = cur.counter(x);
            std::copy(own.begin(), own.end(), dst.begin());
            bool grew = false;
            for (NodeId y : g.successors(x)) grew = max_into(dst, cur.counter(y)) || grew;
            if (grew) {
                estimates[x] = next.estimate(x);
                changed = true;
            }
        }
        if (!changed) break;
        nf.values.push_back(total());
        std::swap(cur, next);
    }
    return nf;
}

AveragedNeighbourhood average_runs(const std::vector<NeighbourhoodFunction> &runs) {
    if (runs.empty()) throw std::invalid_argument("no runs to average");
    std::size_t len = 0;
    for (const auto &r : runs) {
        if (r.values.empty()) throw std::invalid_argument("empty neighbourhood function");
        len = std::max(len, r.values.size());
    }

    const double k = static_cast<double>(runs.size());
    AveragedNeighbourhood out;
    out.mean.n = runs.front().n;
    out.mean.values.assign(len, 0.0);
    out.rsd.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const auto &r : runs) sum += r.at(t);
        const double mean = sum / k;
        double ss = 0.0;
        for (const auto &r : runs) ss += (r.at(t) - mean) * (r.at(t) - mean);
        out.mean.values[t] = mean;
        if (runs.size() > 1 && mean != 0.0) out.rsd[t] = std::sqrt(ss / (k - 1.0)) / mean;
    }
    return out;
}

std::optional<double> mean_distance(const NeighbourhoodFunction &nf) {
    if (nf.values.empty()) return std::nullopt;
    const double pairs = nf.values.back() - nf.values.front();
    if (!(pairs > 0.0)) return std::nullopt;
    double weighted = 0.0;
    for (std::size_t t = 1; t < nf.values.size(); ++t)
        weighted += static_cast<double>(t) * (nf.values[t] - nf.values[t - 1]);
    return weighted / pairs;
}

DistanceDistribution distance_distribution(const NeighbourhoodFunction &nf) {
    if (nf.values.empty() || !(nf.values.back() > 0.0))
        throw std::invalid_argument("distance distribution needs at least one reachable pair");

    DistanceDistribution d;
    const double total = nf.values.back();
    d.reachable_pairs = total;
    d.cumulative.reserve(nf.values.size());
    d.density.reserve(nf.values.size());
    for (std::size_t t = 0; t < nf.values.size(); ++t) {
        d.cumulative.push_back(nf.values[t] / total);
        d.density.push_back(t == 0 ? d.cumulative[0] : d.cumulative[t] - d.cumulative[t - 1]);
    }
    d.mean_distance = mean_distance(nf);

    const double pairs = total - nf.values.front();
    if (pairs > 0.0) {
        for (std::size_t t = 1; t < nf.values.size(); ++t)
            d.positive_density.push_back((nf.values[t] - nf.values[t - 1]) / pairs);
    }
    return d;
}

void write_distribution_csv(std::ostream &out, const NeighbourhoodFunction &nf) {
    out << csv::row({"t", "N", "H", "h"});
    const auto d = distance_distribution(nf);
    for (std::size_t t = 0; t < nf.values.size(); ++t) {
        out << csv::row({std::to_string(t), csv::number(nf.values[t]), csv::number(d.cumulative[t]),
                         csv::number(d.density[t])});
    }
}

}  // namespace robustness
