#ifndef PRIOMET_TEST_ORACLES_HPP
#define PRIOMET_TEST_ORACLES_HPP

// Reference computations written independently of the library code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"

namespace oracle {

using priomet::Vertex;
using priomet::WeightedGraph;

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Floyd–Warshall over the edge list (n^3; test sizes only).
inline std::vector<double> floyd_warshall(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<double> d(n * n, inf);
    for (std::size_t v = 0; v < n; ++v) d[v * n + v] = 0.0;
    for (const auto& e : g.edges()) {
        d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.w);
        d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.w);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = d[i * n + k];
            if (dik == inf) continue;
            for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], dik + d[k * n + j]);
        }
    return d;
}

// Unique path u..v in a tree given by its edge list (BFS parents from u).
inline std::vector<Vertex> tree_path(const WeightedGraph& t, Vertex u, Vertex v) {
    const std::size_t n = t.size();
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& e : t.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::int64_t> parent(n, -1);
    std::vector<Vertex> queue{v};
    parent[v] = v;
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (Vertex y : adj[queue[q]])
            if (parent[y] < 0) {
                parent[y] = queue[q];
                queue.push_back(y);
            }
    std::vector<Vertex> path{u};
    while (path.back() != v) path.push_back(Vertex(parent[path.back()]));
    return path;
}

inline double edge_weight(const WeightedGraph& g, Vertex a, Vertex b) {
    double best = inf;
    for (const auto& e : g.edges())
        if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) best = std::min(best, e.w);
    return best;
}

// a^x <= b^y with arbitrary precision.
inline bool pow_le(std::uint64_t a, unsigned x, std::uint64_t b, unsigned y) {
    using boost::multiprecision::cpp_int;
    return boost::multiprecision::pow(cpp_int(a), x) <= boost::multiprecision::pow(cpp_int(b), y);
}

// max(1, ceil(t log j / log n)): the smallest c >= 1 with j^t <= n^c.
inline unsigned ceil_ratio(std::uint64_t j, std::uint64_t n, unsigned t) {
    unsigned c = 1;
    while (!pow_le(j, t, n, c)) ++c;
    return c;
}

// floor(log n / log(n / j)) for j < n: the largest tau with n^{tau-1} <= j^tau.
inline unsigned tau(std::uint64_t j, std::uint64_t n) {
    unsigned t = 1;
    while (pow_le(n, t, j, t + 1)) ++t;
    return t;
}

inline double lp_norm_diff(const double* a, const double* b, std::size_t dim, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double x = std::fabs(a[i] - b[i]);
        if (std::isinf(p)) acc = std::max(acc, x);
        else acc += std::pow(x, p);
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

inline double brute_gamma(const priomet::MetricSpace& m, Vertex x, Vertex y, const std::vector<Vertex>& A) {
    double dx = inf, dy = inf;
    for (Vertex a : A) {
        dx = std::min(dx, m(x, a));
        dy = std::min(dy, m(y, a));
    }
    return std::min({m(x, y) / 2.0, dx, dy});
}

}  // namespace oracle

#endif
