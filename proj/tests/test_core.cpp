#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "priomet/error.hpp"
#include "priomet/frechet.hpp"
#include "priomet/generators.hpp"
#include "priomet/io.hpp"
#include "priomet/math.hpp"
#include "priomet/oracle.hpp"
#include "priomet/report.hpp"
#include "priomet/rng.hpp"
#include "priomet/stretch.hpp"

using namespace priomet;

namespace {

WeightedGraph graph_from(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("parse a small path graph") {
    WeightedGraph g = graph_from("3 2\n0 1 1.0\n1 2 2.0");
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.is_tree());
    CHECK(g.degree(1) == 2);
}

TEST_CASE("comments and blank lines are ignored") {
    WeightedGraph g = graph_from("# header\n3 2\n\n0 1 1 # first\n1 2 2\n");
    CHECK(g.edge_count() == 2);
}

TEST_CASE("malformed graphs are rejected") {
    CHECK_THROWS_AS(graph_from("3 2\n0 0 1.0\n1 2 1.0"), SelfLoopError);
    CHECK_THROWS_AS(graph_from("3 2\n0 1 -1.0\n1 2 1.0"), NegativeWeightError);
    CHECK_THROWS_AS(graph_from("4 2\n0 1 1\n2 3 1"), DisconnectedError);
    CHECK_THROWS_AS(graph_from("3 2\n0 1 x\n1 2 1"), ParseError);
    CHECK_THROWS_AS(graph_from("3 3\n0 1 1\n1 2 1"), ParseError);
    CHECK_THROWS_AS(graph_from("3 2\n0 5 1\n1 2 1"), Error);
}

TEST_CASE("unit C_8 from a file description") {
    std::ostringstream text;
    text << "8 8\n";
    for (int i = 0; i < 8; ++i) text << i << ' ' << (i + 1) % 8 << " 1\n";
    WeightedGraph g = graph_from(text.str());
    CHECK(g.size() == 8);
    CHECK(g.edge_count() == 8);
    MetricSpace d = exact_distances(g);
    CHECK(d(0, 4) == 4.0);
    CHECK(d(1, 7) == 2.0);
}

TEST_CASE("exact distances on a weighted path") {
    MetricSpace d = exact_distances(graph_from("3 2\n0 1 1.0\n1 2 2.0"));
    CHECK(d(0, 2) == 3.0);
    CHECK(d(2, 0) == 3.0);
    CHECK(d(1, 1) == 0.0);
}

TEST_CASE("exact distances agree with a min-plus closure") {
    for (std::uint64_t s : {1u, 2u, 3u}) {
        WeightedGraph g = make_random_graph(32, 0.3, s, {1, 1, true});
        MetricSpace d = exact_distances(g);
        std::vector<double> fw = oracle::floyd_warshall(g);
        for (std::size_t u = 0; u < 32; ++u)
            for (std::size_t v = 0; v < 32; ++v) CHECK(d(Vertex(u), Vertex(v)) == fw[u * 32 + v]);
    }
    WeightedGraph g = make_random_graph(40, 0.1, 9);
    MetricSpace d = exact_distances(g);
    std::vector<double> fw = oracle::floyd_warshall(g);
    for (std::size_t u = 0; u < 40; ++u)
        for (std::size_t v = 0; v < 40; ++v) CHECK(d(Vertex(u), Vertex(v)) == doctest::Approx(fw[u * 40 + v]));
}

TEST_CASE("parallel and serial shortest paths are identical; next hops descend") {
    WeightedGraph g = make_random_graph(60, 0.08, 4);
    ShortestPaths a = all_pairs_shortest_paths(g), b = all_pairs_shortest_paths_serial(g);
    CHECK(a.dist == b.dist);
    CHECK(a.parent == b.parent);
    for (Vertex s = 0; s < 60; ++s)
        for (Vertex v = 0; v < 60; ++v) {
            if (s == v) continue;
            Vertex h = a.next_hop(v, s);
            REQUIRE(g.port_of(v, h).has_value());
            const double w = g.arc_at(v, *g.port_of(v, h)).w;
            CHECK(a.distance(s, v) == doctest::Approx(w + a.distance(s, h)));
        }
}

TEST_CASE("prioritized stretch of exact and scaled estimates") {
    MetricSpace d = exact_distances(make_cycle(12));
    PriorityRanking r = PriorityRanking::random(12, 3);
    StretchReport one = measure_prioritized_stretch([&](Vertex u, Vertex v) { return d(u, v); }, d, r);
    CHECK(one.global_max == 1.0);
    CHECK(one.global_min == 1.0);
    CHECK(one.pairs == 66);
    CHECK(one.violations == 0);
    StretchReport two = measure_prioritized_stretch([&](Vertex u, Vertex v) { return 2 * d(u, v); }, d, r);
    for (const auto& b : two.buckets) {
        CHECK(b.max_stretch == 2.0);
        CHECK(b.min_stretch == 2.0);
    }
    StretchReport half = measure_prioritized_stretch([&](Vertex u, Vertex v) { return d(u, v) / 2; }, d, r);
    CHECK(half.violations == 66);
}

TEST_CASE("bucket boundaries and pair attribution") {
    const std::size_t n = 10;
    PriorityRanking r = PriorityRanking::random(n, 8);
    PairTable t(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            t.at(Vertex(u), Vertex(v)) = double(std::min(r.rank_of(Vertex(u)), r.rank_of(Vertex(v))));
    StretchReport rep = summarize_ratios(t, r);
    REQUIRE(rep.buckets.size() == 4);
    CHECK(rep.buckets[0].rank_lo == 1);
    CHECK(rep.buckets[0].rank_hi == 1);
    CHECK(rep.buckets[3].rank_lo == 8);
    CHECK(rep.buckets[3].rank_hi == 10);
    // rank j owns n - j pairs
    CHECK(rep.buckets[1].pairs == 8 + 7);
    CHECK(rep.buckets[1].max_stretch == 3.0);
    CHECK(rep.buckets[1].min_stretch == 2.0);
    CHECK(rep.pairs == 45);
}

TEST_CASE("oracle with t = 2 stays within stretch 3 in every bucket") {
    WeightedGraph g = make_random_graph(64, 0.08, 21);
    PriorityRanking r = PriorityRanking::random(64, 22);
    PrioritizedOracle o = build_tz_prioritized(g, r, 2, 23);
    MetricSpace truth(64, oracle::floyd_warshall(g));
    StretchReport rep = measure_prioritized_stretch([&](Vertex u, Vertex v) { return o.query(u, v); }, truth, r);
    CHECK(rep.violations == 0);
    for (const auto& b : rep.buckets) CHECK(approx_le(b.max_stretch, 3.0));
}

TEST_CASE("pair evaluation: parallel equals serial") {
    auto fn = [](Vertex u, Vertex v) { return std::sin(double(u) * 1.3 + double(v)); };
    CHECK(evaluate_pairs(50, fn).values() == evaluate_pairs_serial(50, fn).values());
    PairTable t(7);
    std::set<std::size_t> seen;
    for (Vertex u = 0; u < 7; ++u)
        for (Vertex v = u + 1; v < 7; ++v) {
            CHECK(t.index(u, v) == t.index(v, u));
            seen.insert(t.index(u, v));
        }
    CHECK(seen.size() == 21);
    CHECK(*seen.rbegin() == 20);
}

TEST_CASE("seeded streams") {
    Rng a(0), b(0), c(1);
    std::vector<int> pa(20), pb(20), pc(20);
    for (int i = 0; i < 20; ++i) pa[i] = pb[i] = pc[i] = i;
    a.shuffle(std::span<int>(pa));
    b.shuffle(std::span<int>(pb));
    c.shuffle(std::span<int>(pc));
    CHECK(pa == pb);
    CHECK(pa != pc);
    CHECK(Rng::derive(5, 0) != Rng::derive(5, 1));
    CHECK(Rng::derive(5, 0) == Rng::derive(5, 0));
    Rng d(3);
    for (int i = 0; i < 1000; ++i) {
        double x = d.uniform01();
        CHECK((x >= 0.0 && x < 1.0));
        CHECK(d.below(7) < 7);
    }
}

TEST_CASE("priority rankings") {
    PriorityRanking r = PriorityRanking::random(30, 4);
    for (Rank j = 1; j <= 30; ++j) CHECK(r.rank_of(r.vertex_of(j)) == j);
    PriorityRanking id = PriorityRanking::identity(5);
    CHECK(id.vertex_of(1) == 0);
    CHECK(id.rank_of(4) == 5);
    CHECK(id.by_priority(3, 1) == std::pair<Vertex, Vertex>{1, 3});
    CHECK_THROWS_AS(PriorityRanking({0, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(PriorityRanking({0, 3}), InvalidArgument);
}

TEST_CASE("exact integer power comparison") {
    Rng rng(6);
    for (int k = 0; k < 2000; ++k) {
        std::uint64_t a = 1 + rng.below(300), b = 1 + rng.below(300);
        unsigned x = unsigned(1 + rng.below(9)), y = unsigned(1 + rng.below(9));
        CHECK(pow_leq(a, x, b, y) == oracle::pow_le(a, x, b, y));
    }
    CHECK(pow_leq(256, 3, 16, 6));
    CHECK_FALSE(pow_leq(257, 3, 16, 6));
}

TEST_CASE("logarithms and priority blocks") {
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(17) == 4);
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(17) == 5);
    CHECK(ceil_log2(16) == 4);
    // {1,2}, (2,4], (4,16], (16,256]
    CHECK(double_exp_block(1) == 0);
    CHECK(double_exp_block(2) == 0);
    CHECK(double_exp_block(3) == 1);
    CHECK(double_exp_block(4) == 1);
    CHECK(double_exp_block(5) == 2);
    CHECK(double_exp_block(16) == 2);
    CHECK(double_exp_block(17) == 3);
    CHECK(double_exp_block(256) == 3);
    CHECK(double_exp_block(257) == 4);
    CHECK(double_exp_block_end(3) == 256);
    CHECK(triple_exp_block(4) == 0);
    CHECK(triple_exp_block(5) == 1);
    CHECK(triple_exp_block(16) == 1);
    CHECK(triple_exp_block(17) == 2);
    CHECK(triple_exp_block(65536) == 2);
    CHECK(triple_exp_block_end(1) == 16);
}

TEST_CASE("lp distances") {
    const double a[3] = {0, 3, 1}, b[3] = {4, 0, 1};
    CHECK(lp_distance(a, b, 3, 1.0) == 7.0);
    CHECK(lp_distance(a, b, 3, 2.0) == 5.0);
    CHECK(lp_distance(a, b, 3, kInf) == 4.0);
    CHECK(lp_distance(a, b, 3, 3.0) == doctest::Approx(oracle::lp_norm_diff(a, b, 3, 3.0)));
}

TEST_CASE("distance-to-set coordinates") {
    MetricSpace m = make_random_metric(40, 5);
    std::vector<std::vector<Vertex>> sets{{0, 5, 9}, {}, {39}, {1, 2, 3, 4}};
    std::vector<double> f = frechet_coordinates(m, sets);
    CHECK(f == frechet_coordinates_serial(m, sets));
    for (Vertex x = 0; x < 40; ++x) {
        CHECK(f[x * 4 + 0] == std::min({m(x, 0), m(x, 5), m(x, 9)}));
        CHECK(f[x * 4 + 1] == 0.0);
        CHECK(f[x * 4 + 2] == m(x, 39));
    }
}

TEST_CASE("metric validation and restriction") {
    MetricSpace ok = make_random_metric(20, 2);
    CHECK(ok.validate().empty());
    MetricSpace bad(3, {0, 1, 5, 1, 0, 1, 5, 1, 0});
    CHECK_FALSE(bad.validate().empty());
    MetricSpace asym(2, {0, 1, 2, 0});
    CHECK_FALSE(asym.validate().empty());
    std::vector<Vertex> pts{4, 7, 1};
    MetricSpace sub = ok.restrict_to(pts);
    CHECK(sub.size() == 3);
    CHECK(sub(0, 1) == ok(4, 7));
    CHECK(sub(2, 0) == ok(1, 4));
    CHECK(ok.dist_to_set(3, std::vector<Vertex>{}) == kInf);
}

TEST_CASE("text formats round-trip") {
    WeightedGraph g = make_random_graph(25, 0.2, 7);
    std::ostringstream go;
    write_graph(go, g);
    std::istringstream gi(go.str());
    WeightedGraph g2 = parse_graph(gi);
    CHECK(exact_distances(g2).data() == exact_distances(g).data());

    MetricSpace m = make_random_metric(12, 3);
    std::ostringstream mo;
    write_metric(mo, m);
    std::istringstream mi(mo.str());
    CHECK(parse_metric(mi).data() == m.data());

    PriorityRanking r = PriorityRanking::random(12, 1);
    std::ostringstream ro;
    write_ranking(ro, r);
    std::istringstream ri(ro.str());
    CHECK(parse_ranking(ri, 12).order() == r.order());
    std::istringstream short_rank("0\n1\n");
    CHECK_THROWS(parse_ranking(short_rank, 3));
}

TEST_CASE("generators") {
    WeightedGraph c = make_cycle(8);
    CHECK(c.edge_count() == 8);
    for (const auto& e : c.edges()) CHECK(e.w == 1.0);
    CHECK(make_path(5).is_tree());
    CHECK(make_grid(3, 4).edge_count() == 3 * 3 + 2 * 4);
    WeightedGraph t = make_random_tree(50, 2, {1, 9, true});
    CHECK(t.is_tree());
    for (const auto& e : t.edges()) CHECK(e.w == std::floor(e.w));
    WeightedGraph g = make_random_graph(50, 0.0, 3);
    CHECK(g.connected());
    for (const auto& e : make_random_graph(50, 0.2, 4).edges()) CHECK((e.w >= 1.0 && e.w <= 2.0));
    MetricSpace m = make_random_metric(32, 1);
    for (Vertex x = 0; x < 32; ++x)
        for (Vertex y = 0; y < 32; ++y)
            for (Vertex z = 0; z < 32; ++z) CHECK(approx_le(m(x, z), m(x, y) + m(y, z)));
}

TEST_CASE("reports carry a schema version and per-bucket rows") {
    Report rep;
    rep.structure = "demo";
    rep.seed = 4;
    MetricSpace d = exact_distances(make_path(6));
    rep.stretch = measure_prioritized_stretch([&](Vertex u, Vertex v) { return d(u, v); }, d,
                                              PriorityRanking::identity(6));
    rep.checks.record("fine", true);
    rep.checks.record("broken", false, {{"why", "test"}});
    nlohmann::json j = to_json(rep);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["buckets"].size() == rep.stretch.buckets.size());
    CHECK(j["checks"]["failed"] == 1);
    CHECK_FALSE(rep.checks.ok());
    std::ostringstream csv;
    write_csv(csv, rep);
    std::string text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == long(rep.stretch.buckets.size()) + 1);
}

}  // TEST_SUITE
