#ifndef PRIOMET_GENERATORS_HPP
#define PRIOMET_GENERATORS_HPP

#include <cstdint>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"

namespace priomet {

// Unit-weight cycle C_n (n >= 3) and path P_n (n >= 2).
WeightedGraph make_cycle(std::size_t n);
WeightedGraph make_path(std::size_t n);
// a x b unit grid.
WeightedGraph make_grid(std::size_t a, std::size_t b);

struct WeightRange {
    double lo = 1.0;
    double hi = 2.0;
    bool integer = false;  // draw integers in [lo, hi]
};

// Random recursive tree: vertex k (in a shuffled order) attaches to a uniformly random earlier one.
WeightedGraph make_random_tree(std::size_t n, std::uint64_t seed, WeightRange w = {});
// G(n, p) united with a random spanning tree, so it is always connected.
WeightedGraph make_random_graph(std::size_t n, double p, std::uint64_t seed, WeightRange w = {});
// Points uniform in the unit square with Euclidean distances.
MetricSpace make_random_metric(std::size_t n, std::uint64_t seed);

}  // namespace priomet

#endif
