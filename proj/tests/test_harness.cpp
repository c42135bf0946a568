#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "robustness/harness.hpp"
#include "robustness/strategies.hpp"
#include "robustness/synthetic.hpp"

using namespace robustness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const char *env = std::getenv("TEST_TMPDIR");
    fs::path dir = (env ? fs::path(env) : fs::temp_directory_path() / "robustness-tests") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.strategies = {"random", "degree"};
    cfg.thetas = {0.1, 0.3};
    cfg.runs = 3;
    cfg.seed = 17;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    CHECK(cfg.thetas == std::vector<double>{0.01, 0.05, 0.1, 0.15, 0.2, 0.3});
    CHECK(cfg.runs == 7);
    CHECK(cfg.register_bits == 7);

    auto bad = cfg;
    bad.thetas = {0.0, 0.1};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad.thetas = {0.2, 0.1};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad.thetas = {0.5, 1.5};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.runs = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.strategies = {"betweenness"};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = cfg;
    bad.register_bits = 2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine("fast"), std::invalid_argument);
}

TEST_CASE("cell seeds differ across strategies, levels and runs") {
    std::set<std::uint64_t> seeds;
    for (const auto &s : known_strategies())
        for (double t : {0.0, 0.1, 0.3})
            for (std::size_t r = 0; r < 7; ++r) seeds.insert(cell_seed(5, s, t, r));
    CHECK(seeds.size() == known_strategies().size() * 3 * 7);
    CHECK(cell_seed(5, "lp", 0.1, 2) == cell_seed(5, "lp", 0.1, 2));
}

TEST_CASE("three-node path under random removal") {
    ExperimentInput input{DirectedGraph::from_arcs(3, {{0, 1}, {1, 2}}), {}};
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto cfg = small_config();
        cfg.strategies = {"random"};
        cfg.thetas = {0.5};
        cfg.engine = Engine::Exact;
        cfg.seed = seed;
        const auto result = run_experiment(input, cfg);
        REQUIRE(result.cells.size() == 2);
        const auto &cell = result.cells[1];
        // Removing an endpoint leaves a 2-path (3 pairs of 6); removing the middle leaves 2 pairs.
        const NodeId first = random_order(3, cell_seed(seed, "random-order", 0.0, 0))[0];
        const double expected = first == 1 ? 100.0 * 2 / 6 : 100.0 * 3 / 6;
        CHECK(cell.removed_nodes == 1);
        CHECK(cell.report.reachable_pct == doctest::Approx(expected));
    }
}

TEST_CASE("theta zero rows are the identity with the exact engine") {
    ExperimentInput input{synthetic::erdos_renyi(300, 2.0, 1), {}};
    auto cfg = small_config();
    cfg.engine = Engine::Exact;
    cfg.strategies = {"random", "degree", "pagerank", "lp"};
    cfg.thetas = {0.05, 0.1, 0.2, 0.4, 0.7, 1.0};
    const auto result = run_experiment(input, cfg);
    CHECK(result.all_ok());
    CHECK(result.kendall_pagerank_lp.has_value());

    double last = 0;
    for (const auto &c : result.cells) {
        if (c.theta == 0.0) {
            CHECK(c.report.reachable_pct == 100.0);
            CHECK(c.report.delta_avg == 0.0);
            CHECK(c.report.delta_harm == 0.0);
            CHECK(c.report.kl == 0.0);
            CHECK(c.report.l1 == 0.0);
            CHECK(c.report.l2 == 0.0);
        } else {
            CHECK(c.achieved_fraction >= c.theta);
            CHECK(c.report.reachable_pct <= last);
        }
        last = c.report.reachable_pct;
    }
}

TEST_CASE("approximate reachable ratio is non-increasing within noise") {
    ExperimentInput input{synthetic::erdos_renyi(2000, 3.0, 2), {}};
    auto cfg = small_config();
    cfg.engine = Engine::Approx;
    cfg.runs = 7;
    cfg.strategies = {"random", "pagerank"};
    cfg.thetas = {0.01, 0.05, 0.1, 0.15, 0.2, 0.3};
    const auto result = run_experiment(input, cfg);
    REQUIRE(result.all_ok());
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        const auto &prev = result.cells[i - 1], &cur = result.cells[i];
        if (cur.strategy != prev.strategy) continue;
        const double noise =
            std::hypot(prev.measured.reachable_single_rsd, cur.measured.reachable_single_rsd);
        CHECK(cur.report.reachable_pct <= prev.report.reachable_pct * (1.0 + 3.0 * noise));
        CHECK(cur.measured.reachable_rse > 0.0);
    }
}

TEST_CASE("auto engine picks by size") {
    ExperimentInput input{synthetic::erdos_renyi(200, 2.0, 3), {}};
    auto cfg = small_config();
    cfg.engine = Engine::Auto;
    CHECK(run_experiment(input, cfg).engine_used == Engine::Exact);
    cfg.exact_threshold = 100;
    CHECK(run_experiment(input, cfg).engine_used == Engine::Approx);
}

TEST_CASE("missing metadata fails only the near-root strategy") {
    ExperimentInput input{synthetic::erdos_renyi(200, 2.0, 3), {}};
    auto cfg = small_config();
    cfg.strategies = {"nearroot", "degree"};
    const auto dir = scratch("nearroot");
    cfg.out_dir = dir;
    const auto result = run_experiment(input, cfg);
    CHECK_FALSE(result.all_ok());
    std::size_t failed = 0, ok = 0;
    for (const auto &c : result.cells) (c.ok ? ok : failed)++;
    CHECK(failed == 2);
    CHECK(ok == 3);
    const auto csv = slurp(dir / "results.csv");
    CHECK(csv.find("failed: near-root strategy needs URL metadata") != std::string::npos);
}

TEST_CASE("near-root with metadata") {
    synthetic::WebLikeOptions opts;
    opts.sites = 10;
    opts.pages_per_site = 20;
    auto web = synthetic::web_like(opts, 1);
    ExperimentInput input{web.graph, web.urls};
    auto cfg = small_config();
    cfg.strategies = {"nearroot"};
    const auto result = run_experiment(input, cfg);
    CHECK(result.all_ok());
    CHECK(result.cells.back().report.reachable_pct < 100.0);
}

TEST_CASE("results are byte-identical across identical runs") {
    ExperimentInput input{synthetic::erdos_renyi(500, 3.0, 4), {}};
    auto cfg = small_config();
    cfg.engine = Engine::Approx;
    cfg.strategies = {"random", "lp", "pagerank"};
    const auto a = scratch("det-a"), b = scratch("det-b");
    cfg.out_dir = a;
    emit_plot_data(a, run_experiment(input, cfg));
    cfg.out_dir = b;
    emit_plot_data(b, run_experiment(input, cfg));

    std::size_t files = 0;
    for (const auto &entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        CHECK(slurp(entry.path()) == slurp(b / rel));
        ++files;
    }
    CHECK(files > 5);
    const auto header = slurp(a / "results.csv").substr(0, 40);
    CHECK(header.rfind("graph,strategy,theta,reachable_pct", 0) == 0);
}

TEST_CASE("plot data") {
    ExperimentInput input{synthetic::erdos_renyi(300, 2.0, 5), {}};
    auto cfg = small_config();
    const auto dir = scratch("plot");
    const auto result = run_experiment(input, cfg);
    const auto files = emit_plot_data(dir, result);
    CHECK(fs::exists(dir / "distributions" / "baseline.csv"));
    CHECK(fs::exists(dir / "distributions" / "random_0.3.csv"));
    CHECK(fs::exists(dir / "divergence_degree.csv"));

    for (const auto &f : files) {
        if (f.parent_path().filename() != "distributions") continue;
        std::ifstream in(f);
        std::string line;
        std::getline(in, line);
        double sum = 0;
        while (std::getline(in, line)) sum += std::stod(line.substr(line.rfind(',') + 1));
        CHECK(std::abs(sum - 1.0) <= 1e-6);
    }

    std::ifstream div(dir / "divergence_random.csv");
    std::string header, first;
    std::getline(div, header);
    std::getline(div, first);
    CHECK(first.rfind("0,100,0,0,0,0,0", 0) == 0);

    CHECK(emit_plot_data(scratch("plot-empty"), ExperimentResult{}).empty());
    CHECK(fs::is_empty(scratch("plot-empty")));
}

TEST_CASE("ranking persistence") {
    const auto r = random_order(50, 3);
    std::stringstream ss;
    save_ranking(ss, r);
    CHECK(load_ranking(ss, 50) == r);

    std::istringstream repeated("0\n1\n1\n");
    CHECK_THROWS(load_ranking(repeated, 3));
    std::istringstream short_file("0\n1\n");
    CHECK_THROWS(load_ranking(short_file, 3));
    std::istringstream junk("0\nabc\n2\n");
    CHECK_THROWS_AS(load_ranking(junk, 3), ParseError);
}

TEST_CASE("cached rankings are reused") {
    ExperimentInput input{synthetic::erdos_renyi(100, 2.0, 6), {}};
    auto cfg = small_config();
    cfg.strategies = {"degree"};
    const auto dir = scratch("cache");
    cfg.out_dir = dir;
    run_experiment(input, cfg);
    REQUIRE(fs::exists(dir / "rankings" / "degree.txt"));

    // Overwrite the cache with the reversed order; a reusing run must follow it.
    auto order = degree_order(input.graph).order();
    std::reverse(order.begin(), order.end());
    save_ranking(dir / "rankings" / "degree.txt", NodeRanking(order));
    cfg.reuse_rankings = true;
    const auto reused = run_experiment(input, cfg);
    cfg.reuse_rankings = false;
    const auto fresh = run_experiment(input, cfg);
    CHECK(reused.cells.back().removed_nodes != fresh.cells.back().removed_nodes);
}
