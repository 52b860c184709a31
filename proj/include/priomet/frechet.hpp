#ifndef PRIOMET_FRECHET_HPP
#define PRIOMET_FRECHET_HPP

#include <vector>

#include "priomet/metric.hpp"

namespace priomet {

/*
 * Distance-to-set coordinates: out[x * sets.size() + i] = d(x, sets[i]).
 * An empty set yields the coordinate 0 (rather than +inf) so the map stays finite; a constant
 * coordinate contributes nothing to any pairwise difference.
 */
std::vector<double> frechet_coordinates(const MetricSpace& m, const std::vector<std::vector<Vertex>>& sets);
std::vector<double> frechet_coordinates_serial(const MetricSpace& m,
                                               const std::vector<std::vector<Vertex>>& sets);

}  // namespace priomet

#endif
