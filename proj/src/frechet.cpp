#include "priomet/frechet.hpp"

#include <algorithm>
#include <cstdint>

#include "priomet/math.hpp"

namespace priomet {

namespace {

inline double coordinate(const MetricSpace& m, Vertex x, const std::vector<Vertex>& set) {
    if (set.empty()) return 0.0;
    auto r = m.row(x);
    double d = kInf;
    for (Vertex s : set) d = std::min(d, r[s]);
    return d;
}

}  // namespace

std::vector<double> frechet_coordinates(const MetricSpace& m, const std::vector<std::vector<Vertex>>& sets) {
    const std::size_t n = m.size(), k = sets.size();
    std::vector<double> out(n * k);
    const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < rows; ++x)
        for (std::size_t i = 0; i < k; ++i) out[std::size_t(x) * k + i] = coordinate(m, Vertex(x), sets[i]);
    return out;
}

std::vector<double> frechet_coordinates_serial(const MetricSpace& m,
                                               const std::vector<std::vector<Vertex>>& sets) {
    const std::size_t n = m.size(), k = sets.size();
    std::vector<double> out(n * k);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < k; ++i) out[x * k + i] = coordinate(m, Vertex(x), sets[i]);
    return out;
}

}  // namespace priomet
