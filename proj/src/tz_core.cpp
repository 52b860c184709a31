#include "priomet/tz_core.hpp"

#include <algorithm>
#include <cmath>

#include "priomet/error.hpp"

namespace priomet {

std::size_t LandmarkLevels::count(unsigned i) const {
    return static_cast<std::size_t>(std::count_if(top.begin(), top.end(), [i](int x) { return x >= int(i); }));
}

TzStructure::TzStructure(const MetricSpace& d, LandmarkLevels levels, const ShortestPaths* next)
    : levels_(std::move(levels)) {
    const std::size_t n = d.size();
    const unsigned t = levels_.t;
    if (levels_.top.size() != n) throw InvalidArgument("landmark levels do not match the metric size");
    if (next && next->n != n) throw InvalidArgument("shortest-path data does not match the metric size");
    pivots_.assign(n * t, Pivot{});
    offset_.assign(n + 1, 0);

    std::vector<Pivot> exact(t), best(t);
    std::vector<double> dA(t + 1);
    for (std::size_t v = 0; v < n; ++v) {
        auto row = d.row(Vertex(v));
        // Nearest landmark whose top level is exactly i, then suffix minima give d(v, A_i).
        std::fill(exact.begin(), exact.end(), Pivot{});
        for (std::size_t w = 0; w < n; ++w) {
            int top = levels_.top[w];
            if (top < 0) continue;
            if (row[w] < exact[top].dist) exact[top] = {Vertex(w), row[w]};
        }
        Pivot run{};
        for (int i = int(t) - 1; i >= 0; --i) {
            const Pivot& e = exact[i];
            if (e.dist < run.dist || (e.dist == run.dist && e.dist < kInf && e.id < run.id)) run = e;
            best[i] = run;
            dA[i] = run.dist;
        }
        dA[t] = kInf;

        Pivot* pv = pivots_.data() + v * t;
        pv[t - 1] = best[t - 1];
        for (int i = int(t) - 2; i >= 0; --i) pv[i] = dA[i] == dA[i + 1] ? pv[i + 1] : best[i];

        for (std::size_t w = 0; w < n; ++w) {
            int top = levels_.top[w];
            if (top < 0) continue;
            if (row[w] < dA[top + 1]) {
                Vertex hop = next ? next->next_hop(Vertex(v), Vertex(w)) : Vertex(v);
                entries_.push_back({Vertex(w), hop, row[w]});
            }
        }
        offset_[v + 1] = entries_.size();
    }
}

TzStructure::TzStructure(LandmarkLevels levels, std::vector<Pivot> pivots, std::vector<std::size_t> offset,
                         std::vector<BunchEntry> entries)
    : levels_(std::move(levels)), pivots_(std::move(pivots)), offset_(std::move(offset)), entries_(std::move(entries)) {}

std::size_t TzStructure::lower_bunch_size(Vertex v) const {
    std::size_t c = 0;
    const int top_level = int(levels_.t) - 1;
    for (const auto& e : bunch(v))
        if (levels_.top[e.id] < top_level) ++c;
    return c;
}

const BunchEntry* TzStructure::find_in(std::span<const BunchEntry> bunch, Vertex w) {
    auto it = std::lower_bound(bunch.begin(), bunch.end(), w, [](const BunchEntry& e, Vertex x) { return e.id < x; });
    return it != bunch.end() && it->id == w ? &*it : nullptr;
}

unsigned prioritized_start_level(Rank j, std::size_t n, unsigned t) {
    for (unsigned i = t - 1; i > 0; --i)
        if (pow_leq(j, t, n, t - i)) return i;
    return 0;
}

LandmarkLevels sample_prioritized_levels(const PriorityRanking& r, unsigned t, Rng& rng) {
    const std::size_t n = r.size();
    if (t == 0) throw InvalidArgument("t must be >= 1");
    LandmarkLevels lv;
    lv.t = t;
    lv.top.assign(n, 0);
    std::vector<unsigned> forced(n);
    for (std::size_t v = 0; v < n; ++v) forced[v] = prioritized_start_level(r.rank_of(Vertex(v)), n, t);
    const double rate = std::pow(double(n), -1.0 / double(t)) / 2.0;
    for (unsigned i = 1; i < t; ++i) {
        for (std::size_t v = 0; v < n; ++v) {
            if (lv.top[v] < int(i) - 1) continue;
            bool coin = rng.bernoulli(rate);
            if (coin || forced[v] >= i) lv.top[v] = int(i);
        }
    }
    return lv;
}

LandmarkLevels sample_uniform_levels(std::size_t n, std::span<const Vertex> sources, unsigned t, Rng& rng) {
    if (t == 0) throw InvalidArgument("t must be >= 1");
    if (sources.empty()) throw InvalidArgument("landmark sources must be nonempty");
    const double rate = std::pow(double(sources.size()), -1.0 / double(t));
    LandmarkLevels lv;
    lv.t = t;
    for (int attempt = 0; attempt < 4096; ++attempt) {
        lv.top.assign(n, -1);
        for (Vertex s : sources) lv.top.at(s) = 0;
        for (unsigned i = 1; i < t; ++i)
            for (std::size_t v = 0; v < n; ++v)
                if (lv.top[v] == int(i) - 1 && rng.bernoulli(rate)) lv.top[v] = int(i);
        if (lv.count(t - 1) > 0) return lv;
    }
    throw RetryExhausted("could not sample a nonempty top landmark level");
}

}  // namespace priomet
