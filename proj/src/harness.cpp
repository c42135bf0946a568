#include "robustness/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "robustness/csv.hpp"
#include "robustness/hll.hpp"
#include "robustness/strategies.hpp"

namespace robustness {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Relative standard error of the mean over the finite samples.
double relative_standard_error(const std::vector<double> &samples) {
    std::vector<double> v;
    for (double x : samples)
        if (std::isfinite(x)) v.push_back(x);
    if (v.size() < 2) return 0.0;
    const double k = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= k;
    if (mean == 0.0) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (k - 1.0)) / std::abs(mean) / std::sqrt(k);
}

std::string theta_label(double theta) { return csv::number(theta); }

}  // namespace

Engine parse_engine(const std::string &s) {
    if (s == "exact") return Engine::Exact;
    if (s == "approx") return Engine::Approx;
    if (s == "auto") return Engine::Auto;
    throw std::invalid_argument("unknown engine '" + s + "'");
}

std::string to_string(Engine e) {
    switch (e) {
        case Engine::Exact: return "exact";
        case Engine::Approx: return "approx";
        case Engine::Auto: return "auto";
    }
    return "?";
}

void validate(const ExperimentConfig &cfg) {
    if (cfg.strategies.empty()) throw std::invalid_argument("no strategies requested");
    for (const auto &s : cfg.strategies) {
        const auto &known = known_strategies();
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw std::invalid_argument("unknown strategy '" + s + "'");
    }
    if (cfg.thetas.empty()) throw std::invalid_argument("no theta levels");
    for (std::size_t i = 0; i < cfg.thetas.size(); ++i) {
        const double t = cfg.thetas[i];
        if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("theta levels must lie in (0, 1]");
        if (i > 0 && !(t > cfg.thetas[i - 1])) throw std::invalid_argument("theta levels must be strictly increasing");
    }
    if (cfg.runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (cfg.register_bits < HllCounter::kMinP || cfg.register_bits > HllCounter::kMaxP)
        throw std::invalid_argument("register bits must be in [4, 16]");
}

std::uint64_t cell_seed(std::uint64_t base, const std::string &strategy, double theta, std::size_t run) {
    std::uint64_t h = hash64(fnv1a(strategy), std::bit_cast<std::uint64_t>(theta));
    h = hash64(h, run);
    return base ^ h;
}

MeasuredGraph measure(const DirectedGraph &g, Engine engine, std::size_t runs, int register_bits,
                      std::uint64_t base_seed, const std::string &strategy, double theta) {
    std::vector<NeighbourhoodFunction> nfs;
    if (engine == Engine::Exact) {
        nfs.push_back(exact_neighbourhood(g));
    } else {
        for (std::size_t i = 0; i < runs; ++i)
            nfs.push_back(approx_neighbourhood(g, register_bits, cell_seed(base_seed, strategy, theta, i)));
    }
    auto avg = average_runs(nfs);

    MeasuredGraph m;
    m.mean = std::move(avg.mean);
    m.nf_rsd = std::move(avg.rsd);
    std::vector<double> reach, mu, harm;
    for (const auto &nf : nfs) {
        reach.push_back(nf.reachable_pairs());
        mu.push_back(mean_distance(nf).value_or(kNaN));
        harm.push_back(harmonic_diameter(nf, nf.n));
    }
    m.reachable_rse = relative_standard_error(reach);
    m.mean_distance_rse = relative_standard_error(mu);
    m.harmonic_rse = relative_standard_error(harm);
    m.reachable_single_rsd = m.reachable_rse * std::sqrt(static_cast<double>(reach.size()));
    return m;
}

bool ExperimentResult::all_ok() const {
    return std::all_of(cells.begin(), cells.end(), [](const ExperimentCell &c) { return c.ok; });
}

std::vector<std::string> results_header() {
    return {"graph",         "strategy",      "theta",          "reachable_pct", "delta_avg",
            "harm_before",   "harm_after",    "delta_harm",     "kl",            "l1",
            "l2",            "rsd_reachable", "rsd_avg_dist",   "rsd_harm",      "achieved_fraction",
            "removed_nodes", "removed_arcs",  "status"};
}

std::vector<std::string> results_row(const std::string &graph_name, const ExperimentCell &c) {
    using csv::number;
    if (!c.ok) {
        std::vector<std::string> row{graph_name, c.strategy, number(c.theta)};
        row.resize(results_header().size() - 1);
        row.push_back("failed: " + c.error);
        return row;
    }
    const auto &r = c.report;
    return {graph_name,
            c.strategy,
            number(c.theta),
            number(r.reachable_pct),
            number(r.delta_avg),
            number(r.harm_before),
            number(r.harm_after),
            number(r.delta_harm),
            number(r.kl),
            number(r.l1),
            number(r.l2),
            number(c.measured.reachable_rse),
            number(c.measured.mean_distance_rse),
            number(c.measured.harmonic_rse),
            number(c.achieved_fraction),
            std::to_string(c.removed_nodes),
            std::to_string(c.removed_arcs),
            "ok"};
}

namespace {

NodeRanking compute_ranking(const std::string &strategy, const ExperimentInput &input, const DirectedGraph &g,
                            const ExperimentConfig &cfg, std::vector<std::string> &warnings) {
    if (strategy == "random") return random_order(g.num_nodes(), cell_seed(cfg.seed, "random-order", 0.0, 0));
    if (strategy == "degree") return degree_order(g);
    if (strategy == "pagerank") return pagerank_order(g).ranking;
    if (strategy == "lp") {
        const DirectedGraph sym = is_symmetric(g) ? g : symmetrize(g);
        const auto clustering = label_propagation(sym, cell_seed(cfg.seed, "lp-clustering", 0.0, 0), cfg.lp_max_rounds);
        return lp_order(sym, clustering);
    }
    if (strategy == "nearroot") {
        if (input.urls.empty()) throw std::runtime_error("near-root strategy needs URL metadata");
        if (input.urls.size() != g.num_nodes())
            throw std::runtime_error("URL metadata has " + std::to_string(input.urls.size()) + " lines for " +
                                     std::to_string(g.num_nodes()) + " nodes");
        auto r = near_root_order(input.urls);
        if (r.unparsable > 0)
            warnings.push_back(std::to_string(r.unparsable) + " unparsable URLs ranked last");
        return r.ranking;
    }
    throw std::invalid_argument("unknown strategy '" + strategy + "'");
}

class ResultSink {
  public:
    ResultSink(const std::optional<fs::path> &dir, std::string graph_name) : graph_name_(std::move(graph_name)) {
        if (!dir) return;
        fs::create_directories(*dir);
        out_.open(*dir / "results.csv", std::ios::binary | std::ios::trunc);
        if (!out_) throw std::runtime_error("cannot write " + (*dir / "results.csv").string());
        out_ << csv::row(results_header());
        out_.flush();
    }

    void write(const ExperimentCell &cell) {
        if (!out_.is_open()) return;
        out_ << csv::row(results_row(graph_name_, cell));
        out_.flush();
    }

  private:
    std::string graph_name_;
    std::ofstream out_;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentInput &input, const ExperimentConfig &cfg) {
    validate(cfg);
    const DirectedGraph g = cfg.symmetrize ? symmetrize(input.graph) : input.graph;
    if (g.num_arcs() == 0) throw std::invalid_argument("graph has no arcs");

    ExperimentResult result;
    result.engine_used = cfg.engine;
    if (cfg.engine == Engine::Auto)
        result.engine_used = g.num_nodes() <= cfg.exact_threshold ? Engine::Exact : Engine::Approx;
    const Engine engine = result.engine_used;

    result.baseline = measure(g, engine, cfg.runs, cfg.register_bits, cfg.seed, "baseline", 0.0);
    ResultSink sink(cfg.out_dir, cfg.graph_name);

    std::map<std::string, NodeRanking> rankings;
    for (const auto &strategy : cfg.strategies) {
        ExperimentCell base;
        base.strategy = strategy;
        base.measured = result.baseline;
        base.report = compare(result.baseline.mean, result.baseline.mean);

        NodeRanking ranking;
        try {
            const auto cached = cfg.out_dir ? *cfg.out_dir / "rankings" / (strategy + ".txt") : fs::path();
            if (cfg.reuse_rankings && !cached.empty() && fs::exists(cached)) {
                ranking = load_ranking(cached, g.num_nodes());
            } else {
                ranking = compute_ranking(strategy, input, g, cfg, result.warnings);
                if (!cached.empty()) {
                    fs::create_directories(cached.parent_path());
                    save_ranking(cached, ranking);
                }
            }
        } catch (const std::exception &e) {
            result.warnings.push_back(strategy + ": " + e.what());
            for (double theta : cfg.thetas) {
                ExperimentCell failed;
                failed.strategy = strategy;
                failed.theta = theta;
                failed.ok = false;
                failed.error = e.what();
                sink.write(failed);
                result.cells.push_back(std::move(failed));
            }
            continue;
        }
        rankings[strategy] = ranking;

        sink.write(base);
        result.cells.push_back(base);
        for (double theta : cfg.thetas) {
            ExperimentCell cell;
            cell.strategy = strategy;
            cell.theta = theta;
            try {
                auto removal = apply_removal(g, ranking, theta);
                cell.achieved_fraction = removal.achieved_fraction;
                cell.removed_nodes = removal.removed_nodes;
                cell.removed_arcs = removal.removed_arcs;
                cell.measured = measure(removal.graph, engine, cfg.runs, cfg.register_bits, cfg.seed, strategy, theta);
                cell.report = compare(result.baseline.mean, cell.measured.mean);
            } catch (const std::exception &e) {
                cell.ok = false;
                cell.error = e.what();
            }
            sink.write(cell);
            result.cells.push_back(std::move(cell));
        }
    }

    if (rankings.count("pagerank") && rankings.count("lp"))
        result.kendall_pagerank_lp = kendall_tau(rankings["pagerank"], rankings["lp"]);
    return result;
}

std::vector<fs::path> emit_plot_data(const fs::path &out_dir, const ExperimentResult &result) {
    std::vector<fs::path> written;
    if (result.cells.empty()) return written;

    const fs::path dist_dir = out_dir / "distributions";
    fs::create_directories(dist_dir);
    auto write_nf = [&](const fs::path &path, const NeighbourhoodFunction &nf) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (nf.reachable_pairs() > 0.0) {
            write_distribution_csv(out, nf);
        } else {
            out << csv::row({"t", "N", "H", "h"});
        }
        written.push_back(path);
    };
    write_nf(dist_dir / "baseline.csv", result.baseline.mean);

    std::vector<std::string> order;
    for (const auto &c : result.cells)
        if (std::find(order.begin(), order.end(), c.strategy) == order.end()) order.push_back(c.strategy);

    for (const auto &strategy : order) {
        const fs::path div_path = out_dir / ("divergence_" + strategy + ".csv");
        std::ofstream div(div_path, std::ios::binary | std::ios::trunc);
        div << csv::row({"theta", "reachable_pct", "delta_avg", "delta_harm", "kl", "l1", "l2"});
        for (const auto &c : result.cells) {
            if (c.strategy != strategy || !c.ok) continue;
            const auto &r = c.report;
            div << csv::row({csv::number(c.theta), csv::number(r.reachable_pct), csv::number(r.delta_avg),
                             csv::number(r.delta_harm), csv::number(r.kl), csv::number(r.l1), csv::number(r.l2)});
            if (c.theta > 0.0)
                write_nf(dist_dir / (strategy + "_" + theta_label(c.theta) + ".csv"), c.measured.mean);
        }
        written.push_back(div_path);
    }
    return written;
}

void save_ranking(std::ostream &out, const NodeRanking &ranking) {
    for (NodeId x : ranking.order()) out << x << '\n';
}

void save_ranking(const fs::path &path, const NodeRanking &ranking) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    save_ranking(out, ranking);
}

NodeRanking load_ranking(std::istream &in, std::size_t n) {
    std::vector<NodeId> order;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::istringstream ss(line);
        std::uint64_t v = 0;
        std::string extra;
        if (!(ss >> v) || (ss >> extra)) throw ParseError(lineno, "expected one node id");
        if (v >= n) throw ParseError(lineno, "node id out of range");
        order.push_back(static_cast<NodeId>(v));
    }
    if (!is_permutation_of_nodes(order, n))
        throw std::invalid_argument("ranking file is not a permutation of " + std::to_string(n) + " nodes");
    return NodeRanking(std::move(order));
}

NodeRanking load_ranking(const fs::path &path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load_ranking(in, n);
}

std::vector<std::string> load_urls(const fs::path &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::string> urls;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        urls.push_back(line);
    }
    return urls;
}

}  // namespace robustness
