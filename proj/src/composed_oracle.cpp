#include <algorithm>
#include <cmath>

#include "priomet/error.hpp"
#include "priomet/oracle.hpp"

namespace priomet {

namespace {

constexpr std::uint64_t kBig = IterFunction::kUnbounded;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == kBig || b == kBig) return kBig;
    if (a != 0 && b > kBig / a) return kBig;
    return a * b;
}

// n^{tau-1} <= j^tau
bool tau_feasible(std::uint64_t tau, Rank j, std::size_t n) { return pow_leq(n, tau - 1, j, tau); }

}  // namespace

std::uint64_t IterFunction::F(unsigned k) const {
    std::uint64_t x = 1;
    for (unsigned i = 0; i < k && x != kBig; ++i) x = f(x);
    return x;
}

IterFunction preset(int which, std::size_t n) {
    if (n < 4) throw InvalidArgument("presets need n >= 4");
    const double logn = std::log2(double(n));
    IterFunction fn;
    fn.name = "preset" + std::to_string(which);
    switch (which) {
        case 1:
            fn.f = [](std::uint64_t k) { return k == kBig ? kBig : k + 1; };
            fn.T = ceil_log2(n);
            break;
        case 2:
        case 3:
            fn.f = [](std::uint64_t k) { return sat_mul(2, k); };
            fn.T = static_cast<unsigned>(std::ceil(std::log2(logn)));
            break;
        case 4:
            fn.f = [](std::uint64_t k) { return k == 1 ? std::uint64_t{2} : sat_mul(k, k); };
            fn.T = 1 + static_cast<unsigned>(std::max(0.0, std::ceil(std::log2(std::log2(logn)))));
            break;
        case 5: {
            fn.f = [](std::uint64_t k) { return k >= 63 ? kBig : std::uint64_t{1} << k; };
            unsigned star = 0;
            for (double x = double(n); x > 1.0; x = std::log2(x)) ++star;
            fn.T = star > 1 ? star - 1 : 1;
            break;
        }
        default:
            throw InvalidArgument("unknown preset " + std::to_string(which) + " (expected 1..5)");
    }
    fn.T = std::max(fn.T, 1u);
    while (double(fn.F(fn.T)) < logn) ++fn.T;
    return fn;
}

std::uint64_t tau(Rank j, std::size_t n) {
    if (j == 0 || j > n) throw InvalidArgument("rank out of range");
    if (j == n) return kBig;
    double est = std::floor(std::log2(double(n)) / std::log2(double(n) / double(j)));
    std::uint64_t t = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(est));
    while (t > 1 && !tau_feasible(t, j, n)) --t;
    while (tau_feasible(t + 1, j, n)) ++t;
    return t;
}

ComposedOracle build_composed_oracle(const WeightedGraph& g, const PriorityRanking& r, const IterFunction& fn,
                                     std::uint64_t seed) {
    const std::size_t n = g.size();
    if (r.size() != n) throw InvalidArgument("ranking size does not match the graph");
    if (n < 2) throw InvalidArgument("graph needs at least 2 vertices");
    if (double(fn.F(fn.T)) < std::log2(double(n))) throw InvalidArgument("iterated function must reach F(T) >= log n");
    const MetricSpace d = exact_distances(g);

    ComposedOracle o;
    o.n_ = n;
    o.fn_ = fn;
    o.ranking_ = r;
    for (unsigned i = 1; i <= fn.T; ++i) {
        ComposedOracle::Level lv;
        lv.F = fn.F(i);
        if (lv.F < 2) throw InvalidArgument("iterated function must satisfy F(i) >= 2");
        lv.t_nominal = static_cast<unsigned>(std::min<std::uint64_t>(lv.F - 1, 1u << 30));
        // S_i = {x_j : j^F <= n^{F-1}}; beyond 2^16 the exponent is capped (the prefix is n-1 by then
        // for every n handled here).
        const std::uint64_t e = std::min<std::uint64_t>(lv.F, 1u << 16);
        std::size_t lo = 1, hi = n;
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (pow_leq(mid, e, n, e - 1)) lo = mid; else hi = mid - 1;
        }
        lv.prefix = lo;
        std::vector<Vertex> sources;
        for (Rank j = 1; j <= lv.prefix; ++j) sources.push_back(r.vertex_of(j));
        // Beyond log k levels the inner oracle gains nothing; its stretch 2t-1 only shrinks.
        unsigned t_eff = std::min<unsigned>(lv.t_nominal, std::max(1u, ceil_log2(sources.size())));
        lv.oracle = SourceRestrictedOracle(d, std::move(sources), t_eff, Rng::derive(seed, i));
        o.levels_.push_back(std::move(lv));
    }
    std::vector<Vertex> all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = Vertex(v);
    o.fallback_ = SourceRestrictedOracle(d, std::move(all), std::max(1u, ceil_log2(n)), Rng::derive(seed, 0));
    return o;
}

int ComposedOracle::level_of(Rank j) const {
    for (std::size_t i = 0; i < levels_.size(); ++i)
        if (j <= levels_[i].prefix) return static_cast<int>(i);
    return -1;
}

double ComposedOracle::query(Vertex u, Vertex v) const {
    if (u == v) return 0.0;
    double best = fallback_.query(u, v);
    Vertex a = ranking_.rank_of(u) <= ranking_.rank_of(v) ? u : v;
    Vertex b = a == u ? v : u;
    int i = level_of(ranking_.rank_of(a));
    if (i >= 0) best = std::min(best, levels_[i].oracle.query(a, b));
    return best;
}

double ComposedOracle::stretch_bound(Rank j) const {
    const double fallback = 2.0 * double(std::max(1u, ceil_log2(n_))) - 1.0;
    std::uint64_t tj = tau(j, n_);
    if (tj == kBig) return fallback;
    std::uint64_t fv = fn_.f(tj);
    if (fv == kBig) return fallback;
    return std::min(4.0 * double(fv) - 5.0, fallback);
}

std::size_t ComposedOracle::size_words() const {
    std::size_t w = fallback_.size_words();
    for (const auto& l : levels_) w += l.oracle.size_words();
    return w;
}

}  // namespace priomet
