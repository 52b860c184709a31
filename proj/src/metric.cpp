#include "priomet/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "priomet/error.hpp"
#include "priomet/math.hpp"

namespace priomet {

MetricSpace::MetricSpace(std::size_t n, std::vector<double> dist) : n_(n), dist_(std::move(dist)) {
    if (dist_.size() != n_ * n_) throw InvalidArgument("metric matrix has wrong size");
}

double MetricSpace::diameter() const {
    double d = 0.0;
    for (double x : dist_) d = std::max(d, x);
    return d;
}

double MetricSpace::min_positive() const {
    double d = kInf;
    for (double x : dist_)
        if (x > 0) d = std::min(d, x);
    return d;
}

double MetricSpace::dist_to_set(Vertex x, std::span<const Vertex> set) const {
    double d = kInf;
    auto r = row(x);
    for (Vertex s : set) d = std::min(d, r[s]);
    return d;
}

std::string MetricSpace::validate() const {
    std::ostringstream err;
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) {
            err << "dist[" << i << "][" << i << "] != 0";
            return err.str();
        }
        for (std::size_t j = i + 1; j < n_; ++j) {
            double a = (*this)(i, j), b = (*this)(j, i);
            if (!std::isfinite(a) || a <= 0) {
                err << "dist[" << i << "][" << j << "] is not a positive finite value";
                return err.str();
            }
            if (std::abs(a - b) > kRelTol * std::max(a, b)) {
                err << "asymmetric pair (" << i << ", " << j << ")";
                return err.str();
            }
        }
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                if (!approx_le((*this)(i, k), (*this)(i, j) + (*this)(j, k))) {
                    err << "triangle inequality violated on (" << i << ", " << j << ", " << k << ")";
                    return err.str();
                }
            }
    return {};
}

MetricSpace MetricSpace::restrict_to(std::span<const Vertex> points) const {
    const std::size_t k = points.size();
    std::vector<double> d(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) d[a * k + b] = (*this)(points[a], points[b]);
    return MetricSpace(k, std::move(d));
}

namespace {

void dijkstra_from(const WeightedGraph& g, Vertex s, double* dist, Vertex* parent) {
    const std::size_t n = g.size();
    std::fill(dist, dist + n, kInf);
    std::fill(parent, parent + n, s);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (const auto& a : g.neighbors(v)) {
            double nd = d + a.w;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                parent[a.to] = v;
                pq.push({nd, a.to});
            }
        }
    }
}

// Rows are computed independently, so d(s,v) and d(v,s) may differ in the last bit; keep the
// value computed from the smaller source id so the matrix is exactly symmetric.
void finish(ShortestPaths& sp) {
    for (double d : sp.dist)
        if (std::isinf(d)) throw DisconnectedError("graph is disconnected");
    for (std::size_t s = 0; s < sp.n; ++s)
        for (std::size_t v = s + 1; v < sp.n; ++v) sp.dist[v * sp.n + s] = sp.dist[s * sp.n + v];
}

}  // namespace

ShortestPaths all_pairs_shortest_paths(const WeightedGraph& g) {
    ShortestPaths sp;
    sp.n = g.size();
    sp.dist.resize(sp.n * sp.n);
    sp.parent.resize(sp.n * sp.n);
    const std::int64_t n = static_cast<std::int64_t>(sp.n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t s = 0; s < n; ++s) {
        dijkstra_from(g, static_cast<Vertex>(s), sp.dist.data() + s * n, sp.parent.data() + s * n);
    }
    finish(sp);
    return sp;
}

ShortestPaths all_pairs_shortest_paths_serial(const WeightedGraph& g) {
    ShortestPaths sp;
    sp.n = g.size();
    sp.dist.resize(sp.n * sp.n);
    sp.parent.resize(sp.n * sp.n);
    for (std::size_t s = 0; s < sp.n; ++s) {
        dijkstra_from(g, static_cast<Vertex>(s), sp.dist.data() + s * sp.n,
                      sp.parent.data() + s * sp.n);
    }
    finish(sp);
    return sp;
}

MetricSpace exact_distances(const WeightedGraph& g) { return all_pairs_shortest_paths(g).metric(); }

}  // namespace priomet
