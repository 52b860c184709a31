#include "priomet/generators.hpp"

#include <cmath>
#include <numeric>

#include "priomet/error.hpp"
#include "priomet/rng.hpp"

namespace priomet {

namespace {

double draw_weight(Rng& rng, const WeightRange& w) {
    if (w.integer) {
        auto lo = static_cast<std::uint64_t>(std::ceil(w.lo));
        auto hi = static_cast<std::uint64_t>(std::floor(w.hi));
        return static_cast<double>(lo + rng.below(hi - lo + 1));
    }
    return w.lo + (w.hi - w.lo) * rng.uniform01();
}

void check_range(const WeightRange& w) {
    if (!(w.lo >= 0) || !(w.hi >= w.lo)) throw InvalidArgument("invalid weight range");
    if (w.integer && std::floor(w.hi) < std::ceil(w.lo)) throw InvalidArgument("weight range holds no integer");
}

}  // namespace

WeightedGraph make_cycle(std::size_t n) {
    if (n < 3) throw InvalidArgument("cycle needs n >= 3");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back({Vertex(i), Vertex((i + 1) % n), 1.0});
    return WeightedGraph(n, std::move(e));
}

WeightedGraph make_path(std::size_t n) {
    if (n < 2) throw InvalidArgument("path needs n >= 2");
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({Vertex(i), Vertex(i + 1), 1.0});
    return WeightedGraph(n, std::move(e));
}

WeightedGraph make_grid(std::size_t a, std::size_t b) {
    if (a * b < 2) throw InvalidArgument("grid needs at least 2 vertices");
    std::vector<Edge> e;
    for (std::size_t r = 0; r < a; ++r)
        for (std::size_t c = 0; c < b; ++c) {
            Vertex v = Vertex(r * b + c);
            if (c + 1 < b) e.push_back({v, v + 1, 1.0});
            if (r + 1 < a) e.push_back({v, Vertex(v + b), 1.0});
        }
    return WeightedGraph(a * b, std::move(e));
}

WeightedGraph make_random_tree(std::size_t n, std::uint64_t seed, WeightRange w) {
    if (n < 2) throw InvalidArgument("tree needs n >= 2");
    check_range(w);
    Rng rng(seed);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    rng.shuffle(std::span<Vertex>(order));
    std::vector<Edge> e;
    for (std::size_t k = 1; k < n; ++k) {
        Vertex parent = order[rng.below(k)];
        e.push_back({parent, order[k], draw_weight(rng, w)});
    }
    return WeightedGraph(n, std::move(e));
}

WeightedGraph make_random_graph(std::size_t n, double p, std::uint64_t seed, WeightRange w) {
    if (n < 2) throw InvalidArgument("graph needs n >= 2");
    if (!(p >= 0 && p <= 1)) throw InvalidArgument("edge probability must be in [0, 1]");
    check_range(w);
    Rng rng(seed);
    std::vector<Edge> e = make_random_tree(n, Rng::derive(seed, 1), w).edges();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) e.push_back({Vertex(u), Vertex(v), draw_weight(rng, w)});
    return WeightedGraph(n, std::move(e));
}

MetricSpace make_random_metric(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("metric needs n >= 2");
    Rng rng(seed);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.uniform01();
        y[i] = rng.uniform01();
    }
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = std::hypot(x[i] - x[j], y[i] - y[j]);
    return MetricSpace(n, std::move(d));
}

}  // namespace priomet
