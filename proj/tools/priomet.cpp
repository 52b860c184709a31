// priomet: generators, build/query/bench subcommands and report emission.
//
// Exit status: 0 when every requested invariant check passes, 1 when a check fails, 2 on
// usage, input or build errors.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "priomet/embed_lp.hpp"
#include "priomet/error.hpp"
#include "priomet/generators.hpp"
#include "priomet/io.hpp"
#include "priomet/labeling.hpp"
#include "priomet/math.hpp"
#include "priomet/oracle.hpp"
#include "priomet/report.hpp"
#include "priomet/rng.hpp"
#include "priomet/routing.hpp"
#include "priomet/tree_embed.hpp"
#include "priomet/ultrametric.hpp"

using namespace priomet;
using nlohmann::json;

namespace {

constexpr std::size_t kAllPairsCap = 1024;

struct Global {
    std::uint64_t seed = 1;
    std::string format = "json";
    bool verbose = false;
};

Global G;

void log(const std::string& msg) {
    if (G.verbose) std::cerr << "[priomet] " << msg << '\n';
}

// Everything a build/bench run needs.
struct BenchConfig {
    std::string structure;
    std::string graph, metric, instance;
    std::string ranking = "identity";
    unsigned t = 2;
    std::string p = "2";
    double eps = 0.25;
    std::size_t samples = 100;
    int preset = 2;
    std::string scheme;
    std::string pairs = "all";
    std::string alpha_file;
    std::optional<double> alpha_eps;
    std::string out, report, dump_tree;
    std::size_t dump_index = 0;
};

// ---------------------------------------------------------------------------------------------
// instances

std::size_t to_size(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-') throw InvalidArgument("expected a non-negative integer, got '" + s + "'");
    return std::size_t(v);
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty()) throw InvalidArgument("expected a number, got '" + s + "'");
    return v;
}

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity") return kPInf;
    double p = to_double(s);
    if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1 or 'inf'");
    return p;
}

struct Instance {
    std::optional<WeightedGraph> graph;
    std::optional<MetricSpace> metric;
    std::optional<PriorityRanking> ranking;
};

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

Instance generate_instance(const std::vector<std::string>& tok, std::uint64_t seed, WeightRange w) {
    if (tok.empty()) throw InvalidArgument("missing generator kind");
    const std::string& kind = tok[0];
    auto arg = [&](std::size_t k) -> const std::string& {
        if (k >= tok.size()) throw InvalidArgument("generator '" + kind + "' needs more arguments");
        return tok[k];
    };
    auto size_arg = [&](std::size_t k) {
        std::size_t n = to_size(arg(k));
        if (n < 2) throw InvalidArgument("invalid size " + std::to_string(n) + " (need n >= 2)");
        return n;
    };
    Instance out;
    if (kind == "cycle") {
        out.graph = make_cycle(size_arg(1));
    } else if (kind == "path") {
        out.graph = make_path(size_arg(1));
    } else if (kind == "grid") {
        std::size_t a = to_size(arg(1)), b = to_size(arg(2));
        if (a == 0 || b == 0 || a * b < 2) throw InvalidArgument("invalid grid size");
        out.graph = make_grid(a, b);
    } else if (kind == "random-graph") {
        std::size_t n = size_arg(1);
        double p = to_double(arg(2));
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
        if (tok.size() >= 5) w = {to_double(tok[3]), to_double(tok[4]), w.integer};
        out.graph = make_random_graph(n, p, seed, w);
    } else if (kind == "random-tree") {
        std::size_t n = size_arg(1);
        if (tok.size() >= 4) w = {to_double(tok[2]), to_double(tok[3]), w.integer};
        out.graph = make_random_tree(n, seed, w);
    } else if (kind == "random-metric") {
        out.metric = make_random_metric(size_arg(1), seed);
    } else if (kind == "ranking") {
        std::size_t n = size_arg(1);
        std::string how = tok.size() > 2 ? tok[2] : "random";
        if (how == "random") out.ranking = PriorityRanking::random(n, seed);
        else if (how == "identity") out.ranking = PriorityRanking::identity(n);
        else throw InvalidArgument("ranking kind must be 'random' or 'identity'");
    } else {
        throw InvalidArgument("unknown generator '" + kind + "'");
    }
    return out;
}

std::uint64_t instance_seed() { return Rng::derive(G.seed, 1); }
std::uint64_t ranking_seed() { return Rng::derive(G.seed, 2); }

WeightedGraph load_graph_input(const BenchConfig& c) {
    if (!c.graph.empty()) return load_graph(c.graph);
    if (!c.instance.empty()) {
        Instance in = generate_instance(split_words(c.instance), instance_seed(), {});
        if (!in.graph) throw InvalidArgument("instance '" + c.instance + "' is not a graph");
        return *in.graph;
    }
    throw InvalidArgument("a graph is required (--graph FILE or --instance SPEC)");
}

// The metric and, when it comes from a graph, the graph itself.
std::pair<MetricSpace, std::optional<WeightedGraph>> load_metric_input(const BenchConfig& c) {
    if (!c.metric.empty()) return {load_metric(c.metric), std::nullopt};
    if (!c.graph.empty()) {
        WeightedGraph g = load_graph(c.graph);
        return {exact_distances(g), g};
    }
    if (!c.instance.empty()) {
        Instance in = generate_instance(split_words(c.instance), instance_seed(), {});
        if (in.metric) return {*in.metric, std::nullopt};
        if (in.graph) return {exact_distances(*in.graph), *in.graph};
    }
    throw InvalidArgument("a metric is required (--metric FILE, --graph FILE or --instance SPEC)");
}

PriorityRanking load_ranking_input(const BenchConfig& c, std::size_t n) {
    if (c.ranking == "identity") return PriorityRanking::identity(n);
    if (c.ranking == "random") return PriorityRanking::random(n, ranking_seed());
    return load_ranking(c.ranking, n);
}

// ---------------------------------------------------------------------------------------------
// pair policies and measurement

using PairList = std::vector<std::pair<Vertex, Vertex>>;

// Unordered pairs u < v, or ordered pairs u != v when `ordered`.
PairList select_pairs(const std::string& policy, std::size_t n, bool ordered, std::uint64_t seed) {
    PairList out;
    if (policy == "all") {
        if (n > kAllPairsCap)
            throw InvalidArgument("pair policy 'all' is limited to n <= 1024; use random:K");
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = ordered ? 0 : u + 1; v < n; ++v)
                if (u != v) out.emplace_back(Vertex(u), Vertex(v));
        return out;
    }
    if (policy.rfind("random:", 0) == 0) {
        const std::size_t k = to_size(policy.substr(7));
        const std::size_t total = ordered ? n * (n - 1) : n * (n - 1) / 2;
        if (k == 0) throw InvalidArgument("random:K needs K >= 1");
        Rng rng(seed);
        std::set<std::pair<Vertex, Vertex>> seen;
        while (seen.size() < std::min(k, total)) {
            Vertex u = Vertex(rng.below(n)), v = Vertex(rng.below(n));
            if (u == v) continue;
            if (!ordered && u > v) std::swap(u, v);
            seen.emplace(u, v);
        }
        return {seen.begin(), seen.end()};
    }
    throw InvalidArgument("unknown pair policy '" + policy + "' (all | random:K)");
}

struct Sample {
    Rank key = 0;  // rank used for bucketing
    double ratio = 0.0;
    double bound = kInf;
};

// Same bucketing as summarize_ratios, over an arbitrary sample of pairs.
StretchReport aggregate(std::vector<Sample> samples, std::size_t n) {
    StretchReport rep;
    if (n < 2) return rep;
    std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.key < b.key; });
    const std::size_t nb = rank_bucket(Rank(n)) + 1;
    rep.buckets.resize(nb);
    std::vector<double> sums(nb, 0.0);
    for (std::size_t k = 0; k < nb; ++k) {
        rep.buckets[k].rank_lo = Rank(1) << k;
        rep.buckets[k].rank_hi = Rank(std::min<std::size_t>(n, (std::size_t(1) << (k + 1)) - 1));
        rep.buckets[k].min_stretch = kInf;
    }
    rep.global_min = samples.empty() ? 0.0 : kInf;
    for (const Sample& s : samples) {
        const std::size_t k = rank_bucket(s.key);
        auto& b = rep.buckets[k];
        ++b.pairs;
        sums[k] += s.ratio;
        b.max_stretch = std::max(b.max_stretch, s.ratio);
        b.min_stretch = std::min(b.min_stretch, s.ratio);
        rep.global_max = std::max(rep.global_max, s.ratio);
        rep.global_min = std::min(rep.global_min, s.ratio);
        ++rep.pairs;
    }
    for (std::size_t k = 0; k < nb; ++k) {
        auto& b = rep.buckets[k];
        if (b.pairs) b.mean_stretch = sums[k] / double(b.pairs);
        else b.min_stretch = 0.0;
    }
    while (!rep.buckets.empty() && rep.buckets.back().pairs == 0) rep.buckets.pop_back();
    return rep;
}

double ratio_of(double est, double d) { return d > 0 ? est / d : (est == 0 ? 1.0 : kInf); }

// Evaluates `estimate` on the pairs in parallel (pure reads), keyed by the higher priority.
std::vector<Sample> evaluate(const PairList& pairs, const std::function<double(Vertex, Vertex)>& estimate,
                             const MetricSpace& truth, const PriorityRanking& r, const RankBound& bound) {
    std::vector<Sample> out(pairs.size());
    const std::int64_t m = std::int64_t(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < m; ++k) {
        auto [u, v] = pairs[std::size_t(k)];
        const Rank j = std::min(r.rank_of(u), r.rank_of(v));
        out[std::size_t(k)] = {j, ratio_of(estimate(u, v), truth(u, v)), bound ? bound(j) : kInf};
    }
    return out;
}

struct BoundTally {
    std::size_t below_one = 0;  // underestimates
    std::size_t over = 0;       // above the per-rank bound
    double worst = 0.0;         // max ratio / bound
};

BoundTally tally(const std::vector<Sample>& s) {
    BoundTally t;
    for (const auto& x : s) {
        if (x.ratio < 1.0 - kRelTol) ++t.below_one;
        if (!approx_le(x.ratio, x.bound)) ++t.over;
        if (std::isfinite(x.bound)) t.worst = std::max(t.worst, x.ratio / x.bound);
    }
    return t;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void record_bounds(Report& rep, const std::vector<Sample>& s, const std::string& bound_name) {
    BoundTally bt = tally(s);
    rep.stretch.violations = bt.below_one;
    rep.checks.record("non_contractive", bt.below_one == 0, {{"violations", bt.below_one}});
    rep.checks.record(bound_name, bt.over == 0, {{"violations", bt.over}, {"worst_ratio_to_bound", num(bt.worst)}});
}

// ---------------------------------------------------------------------------------------------
// output

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

void write_json(const std::string& path, const json& j) { open_out(path) << j.dump(2) << '\n'; }

int finish(const Report& rep, const BenchConfig& c) {
    if (!c.report.empty()) {
        write_report(c.report, rep, G.format);
        log("report written to " + c.report);
    } else if (G.format == "csv") {
        write_csv(std::cout, rep);
    } else {
        std::cout << to_json(rep).dump(2) << '\n';
    }
    log("checks: " + std::to_string(rep.checks.passed) + " passed, " + std::to_string(rep.checks.failed) + " failed");
    if (!rep.checks.ok()) {
        for (const auto& [name, d] : rep.checks.details.items())
            if (!d["ok"].get<bool>()) std::cerr << "check failed: " << name << ' ' << d.dump() << '\n';
    }
    return rep.checks.ok() ? 0 : 1;
}

Report base_report(const std::string& structure, const BenchConfig& c, std::size_t n) {
    Report rep;
    rep.structure = structure;
    rep.seed = G.seed;
    rep.params = {{"n", n}, {"ranking", c.ranking}};
    if (!c.graph.empty()) rep.params["graph"] = c.graph;
    if (!c.metric.empty()) rep.params["metric"] = c.metric;
    if (!c.instance.empty()) rep.params["instance"] = c.instance;
    return rep;
}

// ---------------------------------------------------------------------------------------------
// runners

int run_tree(const BenchConfig& c) {
    auto [m, g] = load_metric_input(c);
    const std::size_t n = m.size();
    PriorityRanking r = load_ranking_input(c, n);
    if (!c.alpha_file.empty() && c.alpha_eps) throw InvalidArgument("--alpha-eps and --alpha-file are exclusive");
    PriorityFunction alpha = [&] {
        if (c.alpha_file.empty()) return alpha_preset_eps(c.alpha_eps.value_or(0.25), n);
        std::ifstream in(c.alpha_file);
        if (!in) throw Error("cannot read '" + c.alpha_file + "'");
        std::vector<double> v;
        for (std::string line; std::getline(in, line);) {
            auto w = split_words(line.substr(0, line.find('#')));
            for (const auto& x : w) v.push_back(to_double(x));
        }
        if (v.size() < n) throw InvalidArgument("alpha file has fewer than n values");
        return PriorityFunction::table(std::move(v), "file");
    }();
    Report rep = base_report("single_tree", c, n);
    rep.params["alpha"] = alpha.name();
    PhiReport phi = validate_phi(alpha, n);
    rep.checks.record("alpha_in_phi", phi.in_phi, {{"sum", phi.total}, {"tail_certified", phi.tail_certified}});
    log("building prioritized MST over " + std::to_string(n) + " points");
    DominatingTree tree = prioritized_mst(m, r, alpha);

    PairList pairs = select_pairs(c.pairs, n, false, Rng::derive(G.seed, 3));
    auto s = evaluate(pairs, [&](Vertex u, Vertex v) { return tree.distance(u, v); }, m, r,
                      [&](Rank j) { return 2.0 * alpha(j); });
    record_bounds(rep, s, "distortion_le_2alpha");
    if (c.alpha_file.empty()) {
        const double cap = 1.0 + 3.0 * c.alpha_eps.value_or(0.25);
        std::size_t bad = 0;
        for (const auto& x : s)
            if (x.key == 1 && !approx_le(x.ratio, cap)) ++bad;
        rep.checks.record("top_rank_distortion", bad == 0, {{"cap", cap}, {"violations", bad}});
    }
    rep.stretch = aggregate(s, n);
    rep.stretch.violations = tally(s).below_one;
    rep.stretch.size_words = 3 * tree.edges().size();
    if (!c.out.empty()) {
        json edges = json::array();
        for (const auto& e : tree.edges()) edges.push_back({e.u, e.v, e.w});
        write_json(c.out, edges);
    }
    return finish(rep, c);
}

int run_frt(const BenchConfig& c) {
    auto [m, g] = load_metric_input(c);
    const std::size_t n = m.size();
    PriorityRanking r = load_ranking_input(c, n);
    if (c.samples == 0) throw InvalidArgument("--samples must be >= 1");
    Report rep = base_report("frt", c, n);
    rep.params["samples"] = c.samples;
    log("sampling " + std::to_string(c.samples) + " ultrametrics");
    ExpectedDistortion ed = estimate_expected_distortion(m, r, c.samples, G.seed);
    rep.stretch = ed.report;
    rep.checks.record("domination", approx_le(1.0, ed.min_ratio), {{"min_ratio", num(ed.min_ratio)}});
    double worst = 0.0;
    for (const auto& b : ed.report.buckets) {
        const double env = 64.0 * std::max(1.0, double(rank_bucket(b.rank_lo) + 1));
        worst = std::max(worst, b.mean_stretch / env);
    }
    // Statistical envelope: flagged above 1, failed only at 2x.
    rep.checks.record("bucket_mean_envelope", worst < 2.0, {{"worst_mean_over_envelope", worst}, {"flagged", worst > 1.0}});
    if (!c.dump_tree.empty()) {
        if (c.dump_index >= c.samples) throw InvalidArgument("--dump-index must be below --samples");
        Ultrametric u = build_frt_tree(m, r, frt_sample_seed(G.seed, c.dump_index));
        json j = u.to_json();
        j["sample"] = c.dump_index;
        write_json(c.dump_tree, j);
    }
    return finish(rep, c);
}

// Oracle paths replay over graph edges to the reported estimate.
std::size_t path_mismatches(const WeightedGraph& g, const PrioritizedOracle& o, const PairList& pairs) {
    std::size_t bad = 0;
    for (auto [u, v] : pairs) {
        const double est = o.query(u, v);
        auto path = o.query_path(u, v);
        double len = 0.0;
        bool ok = !path.empty() && path.front() == u && path.back() == v;
        for (std::size_t k = 0; ok && k + 1 < path.size(); ++k) {
            auto port = g.port_of(path[k], path[k + 1]);
            if (!port) ok = false;
            else len += g.arc_at(path[k], *port).w;
        }
        if (!ok || std::fabs(len - est) > 1e-9 * est) ++bad;
    }
    return bad;
}

int run_oracle(const BenchConfig& c) {
    WeightedGraph g = load_graph_input(c);
    const std::size_t n = g.size();
    PriorityRanking r = load_ranking_input(c, n);
    ShortestPaths sp = all_pairs_shortest_paths(g);
    MetricSpace truth = sp.metric();
    Report rep = base_report("tz_prioritized", c, n);
    rep.params["t"] = c.t;
    log("building prioritized oracle, t = " + std::to_string(c.t));
    PrioritizedOracle o = build_tz_prioritized(g, r, c.t, G.seed, &sp);
    const double budget = oracle_size_budget(n, c.t);
    rep.checks.record("size_budget", double(o.total_bunch_entries()) <= budget,
                      {{"entries", o.total_bunch_entries()}, {"budget", budget}, {"attempts", o.attempts()}});
    PairList pairs = select_pairs(c.pairs, n, false, Rng::derive(G.seed, 3));
    auto s = evaluate(pairs, [&](Vertex u, Vertex v) { return o.query(u, v); }, truth, r,
                      [&](Rank j) { return prioritized_stretch_bound(j, n, c.t); });
    record_bounds(rep, s, "prioritized_stretch");
    std::size_t top = 0;
    for (const auto& x : s)
        if (x.key == 1 && std::fabs(x.ratio - 1.0) > kRelTol) ++top;
    rep.checks.record("top_rank_exact", top == 0, {{"violations", top}});
    rep.checks.record("path_replay", path_mismatches(g, o, pairs) == 0);
    rep.stretch = aggregate(s, n);
    rep.stretch.violations = tally(s).below_one;
    rep.stretch.size_words = o.size_words();
    rep.extra["attempts"] = o.attempts();
    rep.extra["total_bunch_entries"] = o.total_bunch_entries();
    return finish(rep, c);
}

int run_composed(const BenchConfig& c) {
    WeightedGraph g = load_graph_input(c);
    const std::size_t n = g.size();
    PriorityRanking r = load_ranking_input(c, n);
    MetricSpace truth = exact_distances(g);
    IterFunction fn = preset(c.preset, n);
    Report rep = base_report("composed", c, n);
    rep.params["preset"] = c.preset;
    rep.params["function"] = fn.name;
    rep.params["T"] = fn.T;
    ComposedOracle o = build_composed_oracle(g, r, fn, G.seed);
    PairList pairs = select_pairs(c.pairs, n, false, Rng::derive(G.seed, 3));
    auto s = evaluate(pairs, [&](Vertex u, Vertex v) { return o.query(u, v); }, truth, r,
                      [&](Rank j) { return o.stretch_bound(j); });
    record_bounds(rep, s, "composed_stretch");
    rep.stretch = aggregate(s, n);
    rep.stretch.violations = tally(s).below_one;
    rep.stretch.size_words = o.size_words();
    rep.extra["fallback_stretch"] = "2*ceil(log n)-1";
    return finish(rep, c);
}

int run_labels(const BenchConfig& c) {
    WeightedGraph g = load_graph_input(c);
    const std::size_t n = g.size();
    PriorityRanking r = load_ranking_input(c, n);
    const std::string scheme = c.scheme.empty() ? "prioritized" : c.scheme;
    Report rep = base_report("labels_" + scheme, c, n);
    rep.params["scheme"] = scheme;
    ShortestPaths sp = all_pairs_shortest_paths(g);
    MetricSpace truth = sp.metric();
    PairList pairs = select_pairs(c.pairs, n, false, Rng::derive(G.seed, 3));
    json labels = json::array();
    std::vector<std::size_t> sizes(n);
    std::vector<Sample> s;

    if (scheme == "prioritized") {
        rep.params["t"] = c.t;
        PrioritizedLabels L = build_prioritized_labels(g, r, c.t, G.seed, &sp);
        const double root = std::pow(double(n), 1.0 / c.t);
        std::size_t over = 0;
        for (Rank j = 2; j <= n; ++j)
            if (double(L.lower_bunch_size(r.vertex_of(j))) > 16.0 * root * std::log2(double(j))) ++over;
        rep.checks.record("top_level_size", double(L.top_level_size) <= 8.0 * root, {{"size", L.top_level_size}});
        rep.checks.record("lower_bunch_size", over == 0, {{"violations", over}});
        s = evaluate(pairs, [&](Vertex u, Vertex v) { return L.query(u, v); }, truth, r,
                     [&](Rank j) { return prioritized_stretch_bound(j, n, c.t); });
        record_bounds(rep, s, "prioritized_stretch");
        for (std::size_t v = 0; v < n; ++v) {
            labels.push_back(to_json(L.labels[v]));
            sizes[v] = L.labels[v].size_words();
        }
        rep.extra["attempts"] = L.attempts;
    } else if (scheme == "fully") {
        rep.params["t"] = c.t;
        FullyPrioritizedLabels F = build_fully_prioritized_labels(g, r, c.t, G.seed);
        const double bound = 2.0 * c.t - 1.0;
        s = evaluate(pairs, [&](Vertex u, Vertex v) { return F.query(u, v); }, truth, r,
                     [&](Rank) { return bound; });
        record_bounds(rep, s, "fixed_stretch");
        double cmax = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            sizes[v] = F.size_words(Vertex(v));
            json lv = to_json(F.base.labels[v]);
            json extra = json::array();
            for (std::size_t i = 2; i <= F.block_of[v]; ++i) {
                json b = to_json(F.blocks[i]->labels[v]);
                b["block"] = i;
                extra.push_back(std::move(b));
            }
            lv["blocks"] = std::move(extra);
            lv["size_words"] = sizes[v];
            labels.push_back(std::move(lv));
            const Rank j = r.rank_of(Vertex(v));
            if (j >= 2)
                cmax = std::max(cmax, double(sizes[v]) / (std::pow(double(j), 1.0 / c.t) * std::log2(double(j))));
        }
        rep.extra["measured_c"] = cmax;
    } else if (scheme == "tree-exact") {
        TreeExactLabels L = build_tree_exact_labels(g, r);
        s = evaluate(pairs, [&](Vertex u, Vertex v) { return L.query(u, v); }, truth, r, [](Rank) { return 1.0; });
        record_bounds(rep, s, "exact");
        std::size_t phase_bad = 0;
        for (const auto& ph : L.phases)
            if (ph.remaining_after != 0 || (ph.index < 31 && ph.levels > (1u << ph.index) + 1)) ++phase_bad;
        rep.checks.record("phase_levels", phase_bad == 0, {{"violations", phase_bad}});
        double cmax = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            labels.push_back(to_json(L.labels[v]));
            sizes[v] = L.labels[v].size_words();
            const Rank j = r.rank_of(Vertex(v));
            cmax = std::max(cmax, double(L.labels[v].entries.size()) / std::max(1.0, std::log2(double(j))));
        }
        rep.extra["measured_c"] = cmax;
    } else {
        throw InvalidArgument("unknown label scheme '" + scheme + "' (prioritized | fully | tree-exact)");
    }
    rep.stretch = aggregate(s, n);
    rep.stretch.violations = tally(s).below_one;
    std::size_t total = 0;
    for (auto w : sizes) total += w;
    rep.stretch.size_words = total;
    rep.extra["label_words"] = sizes;
    if (!c.out.empty()) write_json(c.out, {{"scheme", scheme}, {"n", n}, {"labels", std::move(labels)}});
    return finish(rep, c);
}

int run_routing(const BenchConfig& c) {
    WeightedGraph g = load_graph_input(c);
    const std::size_t n = g.size();
    PriorityRanking r = load_ranking_input(c, n);
    ShortestPaths sp = all_pairs_shortest_paths(g);
    MetricSpace truth = sp.metric();
    Report rep = base_report("routing", c, n);
    rep.params["t"] = c.t;
    rep.params["pairs"] = c.pairs;
    GeneralRoutingScheme scheme = build_general_routing(g, r, c.t, G.seed, &sp);
    PairList pairs = select_pairs(c.pairs, n, true, Rng::derive(G.seed, 3));

    std::vector<Sample> s(pairs.size());
    std::vector<std::size_t> header(pairs.size());
    std::vector<char> delivered(pairs.size()), invariant(pairs.size());
    const std::int64_t m = std::int64_t(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < m; ++k) {
        auto [u, v] = pairs[std::size_t(k)];
        const Rank j = r.rank_of(v);  // destination rank
        double len = kInf;
        try {
            RouteResult res = scheme.route(g, u, scheme.label(v));
            delivered[std::size_t(k)] = !res.hops.empty() && res.hops.back() == v;
            len = res.length;
            header[std::size_t(k)] = res.header_words;
        } catch (const RoutingError&) {
            delivered[std::size_t(k)] = 0;
        }
        invariant[std::size_t(k)] = approx_le(scheme.invariant_ratio(truth, u, v), 1.0);
        s[std::size_t(k)] = {j, ratio_of(len, truth(u, v)), general_routing_stretch_bound(j, n, c.t)};
    }
    std::size_t lost = 0, broken = 0, max_header = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        lost += !delivered[k];
        broken += !invariant[k];
        max_header = std::max(max_header, header[k]);
    }
    rep.checks.record("delivery", lost == 0, {{"undelivered", lost}});
    rep.checks.record("level_invariant", broken == 0, {{"violations", broken}});
    record_bounds(rep, s, "routing_stretch");
    rep.stretch = aggregate(s, n);
    rep.stretch.violations = tally(s).below_one;

    std::size_t label_total = 0, table_total = 0, max_label = 0, max_table = 0;
    std::vector<std::size_t> label_words(n), table_words(n);
    for (std::size_t v = 0; v < n; ++v) {
        label_words[v] = scheme.label(Vertex(v)).size_words();
        table_words[v] = scheme.table_words(Vertex(v));
        label_total += label_words[v];
        table_total += table_words[v];
        max_label = std::max(max_label, label_words[v]);
        max_table = std::max(max_table, table_words[v]);
    }
    rep.stretch.size_words = label_total + table_total;
    rep.extra["bucketed_by"] = "destination rank";
    rep.extra["sizes"] = {{"max_header_words", max_header},
                          {"max_label_words", max_label},
                          {"max_table_words", max_table},
                          {"label_words", label_words},
                          {"table_words", table_words}};
    rep.extra["attempts"] = scheme.attempts();
    return finish(rep, c);
}

std::string sidecar_path(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension(".json");
    if (p.string() == out) p = out + ".meta.json";
    return p.string();
}

int run_lp(const BenchConfig& c) {
    auto [m, g] = load_metric_input(c);
    const std::size_t n = m.size();
    PriorityRanking r = load_ranking_input(c, n);
    const double p = parse_p(c.p);
    const std::string scheme = c.scheme.empty() ? "prioritized" : c.scheme;
    Report rep = base_report("lp_" + scheme, c, n);
    rep.params["p"] = c.p;
    rep.params["scheme"] = scheme;
    EmbeddingMatrix e;
    double weight_sum = 0.0;
    std::function<double(Rank)> bound;
    json blocks = json::array();
    if (scheme == "prioritized") {
        rep.params["eps"] = c.eps;
        PrioritizedLpEmbedding pe = embed_prioritized_lp(m, r, p, c.eps, G.seed);
        e = pe.map;
        weight_sum = pe.weight_sum;
        for (const auto& b : pe.blocks)
            blocks.push_back({{"index", b.index}, {"k", b.k}, {"dim", b.dim}, {"weight", b.weight},
                              {"inner_alpha", b.inner_alpha}, {"bound", b.bound}});
        bound = [pe](Rank j) { return pe.rank_bound(j); };
        rep.extra["c"] = pe.c;
    } else if (scheme == "prioritized-dim") {
        PrioritizedDimEmbedding de = embed_prioritized_dimension(m, r, p, G.seed);
        e = de.map;
        weight_sum = de.weight_sum;
        for (const auto& st : de.steps)
            blocks.push_back({{"index", st.index}, {"k", st.k}, {"dim", st.dim}, {"weight", st.weight},
                              {"D", st.D}, {"contraction", st.contraction}, {"attempts", st.attempts}});
        std::size_t prefix_bad = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t k = e.active_prefix[x]; k < e.dim; ++k)
                if (e.row(Vertex(x))[k] != 0.0) ++prefix_bad;
        rep.checks.record("active_prefix", prefix_bad == 0, {{"violations", prefix_bad}});
    } else {
        throw InvalidArgument("unknown embedding scheme '" + scheme + "' (prioritized | prioritized-dim)");
    }
    DistortionReport dr = measure_distortion(e, m, r);
    rep.checks.record("non_expansive", dr.expansion_violations == 0,
                      {{"violations", dr.expansion_violations}, {"max_expansion", dr.max_expansion}});
    rep.checks.record("weight_sum", approx_le(weight_sum, 1.0), {{"value", weight_sum}});
    if (bound) {
        std::size_t over = 0;
        for (Rank j = 1; j <= n; ++j)
            for (Rank i = j + 1; i <= n; ++i)
                if (!approx_le(dr.contraction_pairs(r.vertex_of(j), r.vertex_of(i)), bound(j))) ++over;
        rep.checks.record("certified_contraction", over == 0, {{"violations", over}});
    }
    rep.stretch = dr.contraction;
    rep.stretch.size_words = e.n * e.dim;
    rep.extra["dimension"] = e.dim;
    rep.extra["blocks"] = std::move(blocks);
    rep.extra["distortion"] = to_json(dr);
    if (!c.out.empty()) {
        std::ofstream out = open_out(c.out);
        out << std::setprecision(17);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t k = 0; k < e.dim; ++k) out << (k ? "," : "") << e.row(Vertex(x))[k];
            out << '\n';
        }
        write_json(sidecar_path(c.out), {{"n", e.n}, {"dim", e.dim}, {"p", c.p}, {"active_prefix", e.active_prefix},
                                         {"scale", e.scale}});
    }
    return finish(rep, c);
}

int run_bench(const BenchConfig& c) {
    if (c.structure == "tree") return run_tree(c);
    if (c.structure == "frt") return run_frt(c);
    if (c.structure == "oracle") return run_oracle(c);
    if (c.structure == "composed") return run_composed(c);
    if (c.structure == "labels") return run_labels(c);
    if (c.structure == "routing") return run_routing(c);
    if (c.structure == "lp") return run_lp(c);
    throw InvalidArgument("unknown structure '" + c.structure + "'");
}

// ---------------------------------------------------------------------------------------------
// subcommands without a report

int run_generate(const std::vector<std::string>& spec, const std::string& out_path, WeightRange w) {
    Instance in = generate_instance(spec, G.seed, w);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    if (in.graph) write_graph(*out, *in.graph);
    if (in.metric) write_metric(*out, *in.metric);
    if (in.ranking) write_ranking(*out, *in.ranking);
    return 0;
}

int run_build_oracle(const BenchConfig& c) {
    WeightedGraph g = load_graph_input(c);
    PriorityRanking r = load_ranking_input(c, g.size());
    if (c.out.empty()) throw InvalidArgument("--out is required");
    PrioritizedOracle o = build_tz_prioritized(g, r, c.t, G.seed);
    {
        std::ofstream out(c.out, std::ios::binary);
        if (!out) throw Error("cannot write '" + c.out + "'");
        o.save(out);
    }
    Report rep = base_report("tz_prioritized", c, g.size());
    rep.params["t"] = c.t;
    const double budget = oracle_size_budget(g.size(), c.t);
    rep.checks.record("size_budget", double(o.total_bunch_entries()) <= budget,
                      {{"entries", o.total_bunch_entries()}, {"budget", budget}, {"attempts", o.attempts()}});
    rep.stretch.size_words = o.size_words();
    rep.extra["attempts"] = o.attempts();
    if (c.report.empty()) {
        log("oracle written to " + c.out + " (" + std::to_string(o.size_words()) + " words)");
        return rep.checks.ok() ? 0 : 1;
    }
    return finish(rep, c);
}

int run_query_oracle(const std::string& path, Vertex u, Vertex v, bool with_path, const std::string& graph) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    PrioritizedOracle o = PrioritizedOracle::load(in);
    if (u >= o.size() || v >= o.size()) throw InvalidArgument("vertex id out of range");
    json j = {{"u", u}, {"v", v}, {"estimate", o.query(u, v)}};
    int rc = 0;
    if (with_path) {
        auto p = o.query_path(u, v);
        j["path"] = p;
        if (!graph.empty()) {
            WeightedGraph g = load_graph(graph);
            const bool ok = u == v || path_mismatches(g, o, {{u, v}}) == 0;
            j["path_replays"] = ok;
            rc = ok ? 0 : 1;
        }
    }
    std::cout << j.dump() << '\n';
    return rc;
}

// ---------------------------------------------------------------------------------------------

void add_instance_options(CLI::App* s, BenchConfig& c, bool metric) {
    s->add_option("--graph", c.graph, "graph file (edge list)");
    if (metric) s->add_option("--metric", c.metric, "metric file (distance matrix)");
    s->add_option("--instance", c.instance, "generate the input instead, e.g. \"cycle 32\"");
    s->add_option("--ranking", c.ranking, "ranking file, or 'identity' / 'random'");
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* th = std::getenv("PRIOMET_THREADS")) {
        try {
            const int k = int(to_size(th));
            if (k >= 1) omp_set_num_threads(k);
        } catch (const Error&) {
            std::cerr << "ignoring invalid PRIOMET_THREADS='" << th << "'\n";
        }
    }

    CLI::App app{"Prioritized metric structures: build, query and benchmark"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", G.seed, "seed for every randomized step");
    app.add_option("--format", G.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--verbose,-v", G.verbose, "progress on stderr");

    BenchConfig c;
    std::vector<std::string> gen_spec;
    std::string gen_out;
    WeightRange w;

    auto* gen = app.add_subcommand("generate", "write a graph, metric or ranking");
    gen->add_option("spec", gen_spec,
                    "cycle N | path N | grid A B | random-graph N P [LO HI] | random-tree N [LO HI] | "
                    "random-metric N | ranking N [random|identity]")
        ->required()
        ->expected(1, 5);
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->add_option("--w-lo", w.lo, "lowest edge weight");
    gen->add_option("--w-hi", w.hi, "highest edge weight");
    gen->add_flag("--integer", w.integer, "integer edge weights");

    auto* et = app.add_subcommand("embed-tree", "single dominating tree with prioritized distortion");
    add_instance_options(et, c, true);
    auto* ae = et->add_option("--alpha-eps", c.alpha_eps, "priority function with parameter eps (default 0.25)");
    et->add_option("--alpha-file", c.alpha_file, "priority function values alpha(1..n)")->excludes(ae);
    et->add_option("--out", c.out, "tree JSON: list of (u, v, length)");
    et->add_option("--report", c.report);
    et->add_option("--pairs", c.pairs, "all | random:K");

    auto* ef = app.add_subcommand("embed-frt", "random ultrametrics with prioritized expected distortion");
    add_instance_options(ef, c, true);
    ef->add_option("--samples", c.samples, "number of sampled trees");
    ef->add_option("--report", c.report);
    ef->add_option("--dump-tree", c.dump_tree, "write one sampled tree as JSON");
    ef->add_option("--dump-index", c.dump_index, "which sample to dump (default 0)");

    auto* el = app.add_subcommand("embed-lp", "prioritized embedding into l_p");
    add_instance_options(el, c, true);
    el->add_option("--p", c.p, "norm, a number >= 1 or 'inf'");
    el->add_option("--eps", c.eps, "weight decay parameter (prioritized scheme)");
    el->add_option("--scheme", c.scheme)->check(CLI::IsMember({"prioritized", "prioritized-dim"}));
    el->add_option("--out", c.out, "embedding CSV (a sidecar JSON is written next to it)");
    el->add_option("--report", c.report);

    auto* bo = app.add_subcommand("build-oracle", "build a prioritized distance oracle");
    add_instance_options(bo, c, false);
    bo->add_option("--t", c.t)->check(CLI::Range(1u, 64u));
    bo->add_option("--out", c.out, "binary oracle file")->required();
    bo->add_option("--report", c.report);

    std::string oracle_path, query_graph;
    Vertex qu = 0, qv = 0;
    bool qpath = false;
    auto* qo = app.add_subcommand("query-oracle", "query a saved oracle");
    qo->add_option("--oracle", oracle_path)->required();
    qo->add_option("--u", qu)->required();
    qo->add_option("--v", qv)->required();
    qo->add_flag("--path", qpath, "also report the path");
    qo->add_option("--graph", query_graph, "verify the path against this graph");

    auto* bn = app.add_subcommand("bench-oracle", "build and verify a prioritized distance oracle");
    add_instance_options(bn, c, false);
    bn->add_option("--t", c.t)->check(CLI::Range(1u, 64u));
    bn->add_option("--pairs", c.pairs, "all | random:K");
    bn->add_option("--report", c.report);

    auto* bl = app.add_subcommand("build-labels", "build and verify a distance labeling");
    add_instance_options(bl, c, false);
    bl->add_option("--scheme", c.scheme)->check(CLI::IsMember({"prioritized", "fully", "tree-exact"}));
    bl->add_option("--t", c.t)->check(CLI::Range(1u, 64u));
    bl->add_option("--pairs", c.pairs, "all | random:K");
    bl->add_option("--out", c.out, "labels JSON");
    bl->add_option("--report", c.report);

    auto* rs = app.add_subcommand("route-sim", "simulate the routing scheme hop by hop");
    add_instance_options(rs, c, false);
    rs->add_option("--t", c.t)->check(CLI::Range(1u, 64u));
    rs->add_option("--pairs", c.pairs, "all | random:K (ordered source/destination pairs)");
    rs->add_option("--report", c.report);

    auto* bb = app.add_subcommand("bench", "build any structure, run the pair policy, write the report");
    add_instance_options(bb, c, true);
    bb->add_option("--structure", c.structure)
        ->required()
        ->check(CLI::IsMember({"tree", "frt", "oracle", "composed", "labels", "routing", "lp"}));
    bb->add_option("--t", c.t)->check(CLI::Range(1u, 64u));
    bb->add_option("--p", c.p);
    bb->add_option("--eps", c.eps);
    bb->add_option("--samples", c.samples);
    bb->add_option("--preset", c.preset)->check(CLI::Range(1, 5));
    bb->add_option("--scheme", c.scheme);
    bb->add_option("--pairs", c.pairs, "all | random:K");
    bb->add_option("--alpha-eps", c.alpha_eps);
    bb->add_option("--out", c.out);
    bb->add_option("--report", c.report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_generate(gen_spec, gen_out, w);
        if (*et) return run_tree(c);
        if (*ef) return run_frt(c);
        if (*el) return run_lp(c);
        if (*bo) return run_build_oracle(c);
        if (*qo) return run_query_oracle(oracle_path, qu, qv, qpath, query_graph);
        if (*bn) return run_oracle(c);
        if (*bl) return run_labels(c);
        if (*rs) return run_routing(c);
        if (*bb) return run_bench(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
