#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "priomet/embed_lp.hpp"
#include "priomet/error.hpp"
#include "priomet/generators.hpp"
#include "priomet/math.hpp"
#include "priomet/rng.hpp"

using namespace priomet;

namespace {

double norm_diff(const EmbeddingMatrix& e, Vertex a, Vertex b) { return oracle::lp_norm_diff(e.row(a), e.row(b), e.dim, e.p); }

std::size_t expansions(const EmbeddingMatrix& e, const MetricSpace& m) {
    std::size_t bad = 0;
    for (Vertex u = 0; u < m.size(); ++u)
        for (Vertex v = u + 1; v < m.size(); ++v)
            if (norm_diff(e, u, v) > m(u, v) * (1 + 1e-9)) ++bad;
    return bad;
}

}  // namespace

TEST_SUITE("embed_lp") {

TEST_CASE("gamma distance") {
    MetricSpace m = make_random_metric(30, 1);
    std::vector<Vertex> A{2, 11, 25};
    GammaParams gp = make_gamma_params(m, A);
    for (Vertex a : A)
        for (Vertex y = 0; y < 30; ++y) CHECK(gamma_distance(m, a, y, gp) == 0.0);
    for (Vertex x = 0; x < 30; ++x)
        for (Vertex y = 0; y < 30; ++y) CHECK(gamma_distance(m, x, y, gp) == oracle::brute_gamma(m, x, y, A));
    GammaParams none = make_gamma_params(m, {});
    CHECK(gamma_distance(m, 3, 4, none) == m(3, 4) / 2);
}

TEST_CASE("phi vanishes on A and separates K x K") {
    MetricSpace m = make_random_metric(64, 2);
    std::vector<Vertex> A{0, 1, 2, 3}, K;
    for (Vertex x = 4; x < 20; ++x) K.push_back(x);
    for (double p : {1.0, 2.0, kPInf}) {
        PhiResult phi = phi_map(m, A, K, p, 3);
        CHECK(phi.levels == 4);
        CHECK(phi.values.dim == phi.levels * phi.repetitions);
        for (Vertex a : A)
            for (std::size_t c = 0; c < phi.values.dim; ++c) CHECK(phi.values.row(a)[c] == 0.0);
        CHECK(expansions(phi.values, m) == 0);
        for (Vertex a : K)
            for (Vertex b : K) {
                if (a >= b) continue;
                const double need = oracle::brute_gamma(m, a, b, A) / (std::pow(24.0, inv_p(p)) * 4.0);
                CHECK(norm_diff(phi.values, a, b) * (1 + 1e-9) >= need);
            }
    }
}

TEST_CASE("phi with two points and no A") {
    MetricSpace m = make_random_metric(10, 4);
    PhiResult phi = phi_map(m, {}, {3, 7}, 2.0, 5);
    CHECK(phi.levels == 1);
    CHECK(norm_diff(phi.values, 3, 7) * (1 + 1e-9) >= m(3, 7) / 2 / std::pow(24.0, 0.5));
    CHECK_THROWS_AS(phi_map(m, {3}, {3, 7}, 2.0, 5), InvalidArgument);
}

TEST_CASE("restricted Bourgain map") {
    MetricSpace two(2, {0, 2, 2, 0});
    RestrictedResult r2 = bourgain_restricted(two, {0, 1}, 2.0, 1);
    // the last coordinate is d(., K) = 0 on both points
    CHECK(r2.values.row(0)[r2.values.dim - 1] == 0.0);
    CHECK(r2.values.row(1)[r2.values.dim - 1] == 0.0);
    CHECK(norm_diff(r2.values, 0, 1) > 0.0);

    MetricSpace m = make_random_metric(64, 6);
    std::vector<Vertex> K{1, 8, 13, 21, 34, 40, 55, 63};
    for (double p : {1.0, 2.0, kPInf}) {
        RestrictedResult r = bourgain_restricted(m, K, p, 7);
        CHECK(expansions(r.values, m) == 0);
        for (Vertex k : K) CHECK(r.values.row(k)[r.values.dim - 1] == 0.0);
        double worst = 0.0;
        for (Vertex k : K)
            for (Vertex x = 0; x < 64; ++x)
                if (x != k) worst = std::max(worst, m(k, x) / norm_diff(r.values, k, x));
        CHECK(worst == doctest::Approx(r.contraction).epsilon(1e-9));
        CHECK(approx_le(r.contraction, r.bound()));
        CHECK(r.bound() == doctest::Approx(3.0 * std::pow(2.0, inv_p(p)) * r.inner_alpha));
    }
}

TEST_CASE("partial Bourgain: zero on A and the disjunction on K x X") {
    MetricSpace m = make_random_metric(64, 8);
    std::vector<Vertex> A{0, 1, 2, 3}, K;
    for (Vertex x = 4; x < 20; ++x) K.push_back(x);
    RestrictedResult g = bourgain_restricted(m, A, 2.0, 9);
    double D = 1.0;
    for (Vertex a : A)
        for (Vertex y = 0; y < 64; ++y)
            if (a != y) D = std::max(D, m(a, y) / norm_diff(g.values, a, y));
    PartialResult f = partial_bourgain(m, A, K, g.values, D, 2.0, 10);
    CHECK(expansions(f.values, m) == 0);
    for (Vertex a : A)
        for (std::size_t c = 0; c < f.values.dim; ++c) CHECK(f.values.row(a)[c] == 0.0);
    const double lk = std::max(1.0, std::log2(double(K.size())));
    for (Vertex x : K)
        for (Vertex y = 0; y < 64; ++y) {
            if (x == y) continue;
            const bool by_f = norm_diff(f.values, x, y) * (1 + 1e-9) >= m(x, y) / (1000 * D * lk);
            const bool by_g = norm_diff(g.values, x, y) * (1 + 1e-9) >= m(x, y) / (2 * D);
            CHECK((by_f || by_g));
        }
    CHECK(f.by_f + f.by_g == f.pairs);
}

TEST_CASE("prioritized embedding: two points") {
    MetricSpace m(2, {0, 3, 3, 0});
    PrioritizedLpEmbedding e = embed_prioritized_lp(m, PriorityRanking::identity(2), 2.0, 0.5, 1);
    CHECK(e.blocks.size() == 1);
    CHECK(norm_diff(e.map, 0, 1) > 0.0);
    CHECK(approx_le(norm_diff(e.map, 0, 1), 3.0));
}

TEST_CASE("prioritized embedding: non-expansive, weights, per-block certificates") {
    const std::size_t n = 128;
    MetricSpace m = make_random_metric(n, 11);
    PriorityRanking r = PriorityRanking::random(n, 12);
    PrioritizedLpEmbedding e = embed_prioritized_lp(m, r, 2.0, 0.5, 13);
    CHECK(expansions(e.map, m) == 0);
    double sum = 0.0;
    for (const auto& b : e.blocks) sum += b.weight * b.weight;
    CHECK(approx_le(sum, 1.0));
    CHECK(sum == doctest::Approx(e.weight_sum));
    CHECK(e.map.dim <= 4 * 24 * std::pow(std::log2(double(n)), 2));
}

TEST_CASE("prioritized embedding on unit C_64: bucket worst within the certified bound") {
    const std::size_t n = 64;
    MetricSpace m = exact_distances(make_cycle(n));
    PriorityRanking r = PriorityRanking::random(n, 14);
    for (double p : {1.0, 2.0, kPInf}) {
        PrioritizedLpEmbedding e = embed_prioritized_lp(m, r, p, 0.5, 15);
        CHECK(expansions(e.map, m) == 0);
        for (Rank j = 1; j <= n; ++j)
            for (Rank i = j + 1; i <= n; ++i) {
                const Vertex a = r.vertex_of(j), b = r.vertex_of(i);
                const auto& blk = e.blocks[double_exp_block(j)];
                CHECK(approx_le(blk.contraction, blk.bound));
                CHECK(approx_le(m(a, b) / norm_diff(e.map, a, b), blk.bound / blk.weight));
            }
    }
}

TEST_CASE("prioritized dimension: zero tails and steps certified") {
    const std::size_t n = 128;
    MetricSpace m = make_random_metric(n, 16);
    PriorityRanking r = PriorityRanking::random(n, 17);
    PrioritizedDimEmbedding e = embed_prioritized_dimension(m, r, 2.0, 18);
    CHECK(expansions(e.map, m) == 0);
    REQUIRE(!e.steps.empty());
    for (Rank j = 1; j <= 4; ++j) {
        const Vertex x = r.vertex_of(j);
        CHECK(e.map.active_prefix[x] == e.steps[0].dim);
        for (std::size_t c = e.steps[0].dim; c < e.map.dim; ++c) CHECK(e.map.row(x)[c] == 0.0);
    }
    for (Vertex x = 0; x < n; ++x)
        for (std::size_t c = e.map.active_prefix[x]; c < e.map.dim; ++c) CHECK(e.map.row(x)[c] == 0.0);
    for (const auto& st : e.steps) CHECK(approx_le(st.contraction, st.D_next));
    CHECK(approx_le(e.weight_sum, 1.0));
    CHECK(dimension_step_bound(0) == 2.0);
    CHECK(dimension_step_bound(1) == std::ldexp(1.0, 2 + 5));
}

TEST_CASE("total dimension is O(log^2 n)") {
    const std::size_t n = 256;
    MetricSpace m = make_random_metric(n, 19);
    PrioritizedDimEmbedding e = embed_prioritized_dimension(m, PriorityRanking::random(n, 20), 2.0, 21);
    const double c = double(e.map.dim) / std::pow(std::log2(double(n)), 2);
    MESSAGE("dimension " << e.map.dim << ", dim / log^2 n = " << c);
    CHECK(c <= 100.0);
}

TEST_CASE("distortion report") {
    // points e_i / 2^{1/p} realize the uniform metric exactly in l_p
    const std::size_t n = 6;
    std::vector<double> d(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
    MetricSpace uni(n, d);
    for (double p : {1.0, 2.0, kPInf}) {
        EmbeddingMatrix e(n, n, p);
        for (std::size_t i = 0; i < n; ++i) e.row(Vertex(i))[i] = std::isinf(p) ? 1.0 : std::pow(2.0, -1.0 / p);
        DistortionReport rep = measure_distortion(e, uni, PriorityRanking::identity(n));
        CHECK(rep.expansion_violations == 0);
        CHECK(rep.contraction.global_max == doctest::Approx(1.0));
        CHECK(rep.max_expansion == doctest::Approx(1.0));
    }

    MetricSpace m = make_random_metric(60, 22);
    PriorityRanking r = PriorityRanking::random(60, 23);
    PrioritizedLpEmbedding pe = embed_prioritized_lp(m, r, 2.0, 0.5, 24);
    DistortionReport rep = measure_distortion(pe.map, m, r);
    CHECK(rep.expansion_violations == 0);
    Rng rng(25);
    for (int k = 0; k < 100; ++k) {
        Vertex u = Vertex(rng.below(60)), v = Vertex(rng.below(60));
        if (u == v) continue;
        CHECK(rep.contraction_pairs(u, v) == doctest::Approx(m(u, v) / norm_diff(pe.map, u, v)).epsilon(1e-12));
    }
}

TEST_CASE("invalid parameters") {
    MetricSpace m = make_random_metric(10, 26);
    CHECK_THROWS_AS(embed_prioritized_lp(m, PriorityRanking::identity(10), 0.5, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(embed_prioritized_lp(m, PriorityRanking::identity(10), 2.0, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(phi_map(m, {}, {}, 2.0, 1), InvalidArgument);
}

}  // TEST_SUITE
