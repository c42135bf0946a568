#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "robustness/hll.hpp"
#include "robustness/neighbourhood.hpp"
#include "robustness/strategies.hpp"
#include "robustness/synthetic.hpp"

using namespace robustness;

namespace {

DirectedGraph path3() { return DirectedGraph::from_arcs(3, {{0, 1}, {1, 2}}); }
DirectedGraph cycle3() { return DirectedGraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}); }

NeighbourhoodFunction nf_of(std::vector<double> v, std::size_t n) { return {std::move(v), n}; }

}  // namespace

TEST_CASE("exact neighbourhood fixtures") {
    CHECK(exact_neighbourhood(path3()).values == std::vector<double>{3, 5, 6});
    CHECK(exact_neighbourhood(cycle3()).values == std::vector<double>{3, 6, 9});
    auto empty = exact_neighbourhood(DirectedGraph::from_arcs(7, {}));
    CHECK(empty.values == std::vector<double>{7});
    CHECK(empty.n == 7);
}

TEST_CASE("exact neighbourhood agrees with per-source BFS") {
    // Sizes straddle the 256-source batch width.
    for (std::size_t n : {10, 255, 256, 257, 700}) {
        for (double d : {0.8, 1.5, 4.0}) {
            const auto g = synthetic::erdos_renyi(n, d, n * 31 + static_cast<std::uint64_t>(d * 10));
            CHECK(exact_neighbourhood(g).values == oracle::neighbourhood(g));
        }
    }
}

TEST_CASE("exact neighbourhood skips removed nodes") {
    const auto g = synthetic::erdos_renyi(400, 2.0, 5);
    const auto r = apply_removal(g, random_order(400, 8), 0.3);
    const auto nf = exact_neighbourhood(r.graph);
    CHECK(nf.values == oracle::neighbourhood(r.graph));
    CHECK(nf.values.front() == static_cast<double>(r.graph.num_live_nodes()));
    CHECK(nf.n == r.graph.num_live_nodes());

    const auto path_minus_middle = apply_removal(path3(), NodeRanking({1, 0, 2}), 0.5);
    CHECK(exact_neighbourhood(path_minus_middle.graph).values == std::vector<double>{2});
}

TEST_CASE("approximate neighbourhood on trivial graphs") {
    const auto empty = approx_neighbourhood(DirectedGraph::from_arcs(100, {}), 7, 3);
    CHECK(empty.last() == 0);
    // 100 singleton counters, each at the one-element linear-counting value.
    CHECK(empty.values[0] == doctest::Approx(100 * 128 * std::log(128.0 / 127.0)));

    for (std::uint64_t seed : {1, 2, 3, 99}) {
        const auto nf = approx_neighbourhood(cycle3(), 7, seed);
        REQUIRE(nf.values.size() == 3);  // two productive iterations
        HllCounter all(7, seed);
        for (std::uint64_t x = 0; x < 3; ++x) all.add(x);
        CHECK(nf.values[2] == doctest::Approx(3 * all.estimate()));
    }
}

TEST_CASE("approximate neighbourhood is deterministic per seed") {
    const auto g = synthetic::erdos_renyi(500, 3.0, 77);
    CHECK(approx_neighbourhood(g, 7, 5).values == approx_neighbourhood(g, 7, 5).values);
    CHECK(approx_neighbourhood(g, 7, 5).values != approx_neighbourhood(g, 7, 6).values);
}

TEST_CASE("approximate neighbourhood terminates within n iterations") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = synthetic::erdos_renyi(60, 1.2, seed);
        CHECK(approx_neighbourhood(g, 5, seed).values.size() <= g.num_nodes());
    }
    // A directed path has the longest stabilisation time.
    std::vector<Arc> arcs;
    for (NodeId x = 0; x + 1 < 50; ++x) arcs.emplace_back(x, x + 1);
    const auto nf = approx_neighbourhood(DirectedGraph::from_arcs(50, arcs), 7, 1);
    CHECK(nf.values.size() <= 50);
}

TEST_CASE("seven-seed average matches the exact oracle within 5%") {
    const auto g = synthetic::erdos_renyi(1000, 5.0, 2024);
    const auto exact = oracle::neighbourhood(g);
    std::vector<NeighbourhoodFunction> runs;
    for (std::uint64_t seed = 0; seed < 7; ++seed) runs.push_back(approx_neighbourhood(g, 7, 1000 + seed));
    const auto avg = average_runs(runs);
    const std::size_t len = std::max(exact.size(), avg.mean.values.size());
    for (std::size_t t = 0; t < len; ++t) {
        const double truth = t < exact.size() ? exact[t] : exact.back();
        CHECK(std::abs(avg.mean.at(t) - truth) / truth <= 0.05);
    }
}

TEST_CASE("approximate neighbourhood excludes removed nodes") {
    const auto g = synthetic::erdos_renyi(1000, 3.0, 4);
    const auto r = apply_removal(g, random_order(1000, 4), 0.5);
    const auto nf = approx_neighbourhood(r.graph, 7, 9);
    CHECK(nf.n == r.graph.num_live_nodes());
    const double per_node = 128 * std::log(128.0 / 127.0);
    CHECK(nf.values[0] == doctest::Approx(per_node * static_cast<double>(r.graph.num_live_nodes())));
}

TEST_CASE("average_runs") {
    const auto run = nf_of({3, 5, 6}, 3);
    auto same = average_runs(std::vector<NeighbourhoodFunction>(7, run));
    CHECK(same.mean.values == run.values);
    for (double r : same.rsd) CHECK(r == 0.0);

    auto two = average_runs({nf_of({10}, 1), nf_of({20}, 1)});
    CHECK(two.mean.values == std::vector<double>{15});
    CHECK(two.rsd[0] == doctest::Approx(std::sqrt(50.0) / 15.0));

    auto padded = average_runs({nf_of({1, 2, 3}, 1), nf_of({1, 2, 3, 4, 5}, 1)});
    CHECK(padded.mean.values == std::vector<double>{1, 2, 3, 3.5, 4});

    CHECK_THROWS_AS(average_runs({}), std::invalid_argument);
}

TEST_CASE("distance distribution") {
    auto d = distance_distribution(nf_of({3, 5, 6}, 3));
    CHECK(d.density[0] == doctest::Approx(0.5));
    CHECK(d.density[1] == doctest::Approx(1.0 / 3.0));
    CHECK(d.density[2] == doctest::Approx(1.0 / 6.0));
    REQUIRE(d.mean_distance);
    CHECK(*d.mean_distance == doctest::Approx(4.0 / 3.0));
    CHECK(d.cumulative.back() == 1.0);
    CHECK(d.positive_density == std::vector<double>{2.0 / 3.0, 1.0 / 3.0});

    auto c = distance_distribution(nf_of({3, 6, 9}, 3));
    CHECK(*c.mean_distance == 1.5);

    auto flat = distance_distribution(nf_of({4}, 4));
    CHECK_FALSE(flat.mean_distance);
    CHECK(flat.positive_density.empty());

    CHECK_THROWS_AS(distance_distribution(nf_of({0}, 0)), std::invalid_argument);
}

TEST_CASE("distribution invariants on random graphs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto nf = exact_neighbourhood(synthetic::erdos_renyi(200, 1.5, seed));
        for (std::size_t t = 1; t < nf.values.size(); ++t) CHECK(nf.values[t] > nf.values[t - 1]);
        const auto d = distance_distribution(nf);
        CHECK(d.cumulative.back() == 1.0);
        CHECK(std::accumulate(d.density.begin(), d.density.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
        for (std::size_t t = 1; t < d.cumulative.size(); ++t) CHECK(d.cumulative[t] >= d.cumulative[t - 1]);

        // mu from the definition over BFS distances.
        const auto hist = oracle::distance_histogram(synthetic::erdos_renyi(200, 1.5, seed));
        double weighted = 0, pairs = 0;
        for (std::size_t t = 1; t < hist.size(); ++t) {
            weighted += static_cast<double>(t * hist[t]);
            pairs += static_cast<double>(hist[t]);
        }
        CHECK(*d.mean_distance == doctest::Approx(weighted / pairs));
    }
}

TEST_CASE("distribution csv") {
    std::ostringstream out;
    write_distribution_csv(out, nf_of({3, 5, 6}, 3));
    CHECK(out.str() == "t,N,H,h\r\n0,3,0.5,0.5\r\n1,5,0.8333333333333334,0.33333333333333337\r\n2,6,1,0.16666666666666663\r\n");
}
