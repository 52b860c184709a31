#ifndef PRIOMET_METRIC_HPP
#define PRIOMET_METRIC_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "priomet/graph.hpp"

namespace priomet {

/*
 * Finite metric stored as a dense row-major n x n matrix.
 */
class MetricSpace {
public:
    MetricSpace() = default;
    MetricSpace(std::size_t n, std::vector<double> dist);

    std::size_t size() const { return n_; }
    double operator()(Vertex u, Vertex v) const { return dist_[std::size_t(u) * n_ + v]; }
    std::span<const double> row(Vertex u) const { return {dist_.data() + std::size_t(u) * n_, n_}; }
    const std::vector<double>& data() const { return dist_; }

    double diameter() const;
    double min_positive() const;

    // d(x, set); +inf when the set is empty.
    double dist_to_set(Vertex x, std::span<const Vertex> set) const;

    // Empty string when all metric invariants hold (tolerance relative 1e-9), otherwise a
    // description of the first violation found.
    std::string validate() const;

    // The metric restricted to `points` (re-indexed 0..k-1 in the given order).
    MetricSpace restrict_to(std::span<const Vertex> points) const;

private:
    std::size_t n_ = 0;
    std::vector<double> dist_;
};

/*
 * All-pairs shortest paths with the shortest-path-tree parent of every vertex for every source.
 * parent(s, v) is the neighbor of v on its shortest path towards s (the next hop from v to s).
 */
struct ShortestPaths {
    std::size_t n = 0;
    std::vector<double> dist;
    std::vector<Vertex> parent;

    double distance(Vertex s, Vertex v) const { return dist[std::size_t(s) * n + v]; }
    Vertex next_hop(Vertex from, Vertex to) const { return parent[std::size_t(to) * n + from]; }
    MetricSpace metric() const { return MetricSpace(n, dist); }
};

// Dijkstra from every vertex (OpenMP-parallel over sources). Throws DisconnectedError.
ShortestPaths all_pairs_shortest_paths(const WeightedGraph& g);
// Serial reference; output is bitwise identical to the parallel kernel.
ShortestPaths all_pairs_shortest_paths_serial(const WeightedGraph& g);

// Ground-truth metric d_G.
MetricSpace exact_distances(const WeightedGraph& g);

}  // namespace priomet

#endif
