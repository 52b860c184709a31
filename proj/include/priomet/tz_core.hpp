#ifndef PRIOMET_TZ_CORE_HPP
#define PRIOMET_TZ_CORE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "priomet/math.hpp"
#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"
#include "priomet/rng.hpp"

namespace priomet {

struct BunchEntry {
    Vertex id = 0;
    Vertex next_hop = 0;  // neighbor of the owner on a shortest path towards `id`
    double dist = 0.0;
};

struct Pivot {
    Vertex id = 0;
    double dist = kInf;
};

/*
 * Landmark hierarchy A_0 ⊇ A_1 ⊇ ... ⊇ A_{t-1} ⊇ A_t = ∅ given by top[v] = max i with v in A_i
 * (-1 when v is not in A_0).
 */
struct LandmarkLevels {
    unsigned t = 1;
    std::vector<int> top;

    bool in(Vertex v, unsigned i) const { return top[v] >= static_cast<int>(i); }
    std::size_t count(unsigned i) const;
};

/*
 * Bunches and pivots of every vertex for a landmark hierarchy:
 *   p_i(v)  nearest vertex of A_i (smallest id among ties; p_i = p_{i+1} when d(v,A_i) = d(v,A_{i+1}),
 *           which keeps every pivot inside the bunch),
 *   B_i(v) = {w in A_i : d(v,w) < d(v,A_{i+1})},  B(v) = union of the B_i(v).
 * Bunches are flat maps sorted by landmark id.
 */
class TzStructure {
public:
    TzStructure() = default;
    // `next` may be null (no path reporting; next hops are then the owner itself).
    TzStructure(const MetricSpace& d, LandmarkLevels levels, const ShortestPaths* next);

    std::size_t size() const { return pivots_.size() / std::max(1u, levels_.t); }
    unsigned t() const { return levels_.t; }
    const LandmarkLevels& levels() const { return levels_; }

    const Pivot& pivot(Vertex v, unsigned i) const { return pivots_[std::size_t(v) * levels_.t + i]; }
    std::span<const Pivot> pivots(Vertex v) const { return {pivots_.data() + std::size_t(v) * levels_.t, levels_.t}; }
    std::span<const BunchEntry> bunch(Vertex v) const {
        return {entries_.data() + offset_[v], entries_.data() + offset_[v + 1]};
    }
    const BunchEntry* find(Vertex v, Vertex w) const { return find_in(bunch(v), w); }

    std::size_t total_entries() const { return entries_.size(); }
    // |B_0(v) ∪ ... ∪ B_{t-2}(v)|
    std::size_t lower_bunch_size(Vertex v) const;

    static const BunchEntry* find_in(std::span<const BunchEntry> bunch, Vertex w);

    // Raw construction from stored data (deserialization).
    TzStructure(LandmarkLevels levels, std::vector<Pivot> pivots, std::vector<std::size_t> offset,
                std::vector<BunchEntry> entries);
    const std::vector<std::size_t>& offsets() const { return offset_; }
    const std::vector<BunchEntry>& entries() const { return entries_; }
    const std::vector<Pivot>& all_pivots() const { return pivots_; }

private:
    LandmarkLevels levels_;
    std::vector<Pivot> pivots_;
    std::vector<std::size_t> offset_{0};
    std::vector<BunchEntry> entries_;
};

// One loop iteration of the query: after it, w = p_i(v) for the (swapped) v.
struct QueryStep {
    unsigned level = 0;
    Vertex u = 0;
    Vertex v = 0;
    Vertex w = 0;
    double dist_vw = 0.0;
};

struct QueryResult {
    double estimate = 0.0;
    Vertex u = 0;  // final (u, v, w): w in B(u), w = p_level(v)
    Vertex v = 0;
    Vertex w = 0;
    unsigned start_level = 0;
    unsigned level = 0;
    std::vector<QueryStep> steps;  // filled only when tracing
};

/*
 * The query loop on any bunch/pivot source:
 *   w <- v; while w not in B(u): i <- i+1; (u, v) <- (v, u); w <- p_i(v).
 * `bunch_of(x)` returns x's bunch span and `pivot_of(x, i)` its level-i pivot; both are reads of
 * per-vertex data, so labels and oracles share this exact arithmetic.
 */
template <class BunchOf, class PivotOf>
QueryResult tz_query_loop(Vertex v, Vertex u, unsigned i, unsigned t, BunchOf&& bunch_of, PivotOf&& pivot_of,
                          bool trace = false) {
    QueryResult res;
    res.start_level = i;
    Vertex w = v;
    double dvw = 0.0;
    const BunchEntry* hit = TzStructure::find_in(bunch_of(u), w);
    while (!hit) {
        ++i;
        if (i >= t) break;  // unreachable for valid hierarchies: A_{t-1} lies in every bunch
        std::swap(u, v);
        const Pivot& p = pivot_of(v, i);
        w = p.id;
        dvw = p.dist;
        if (trace) res.steps.push_back({i, u, v, w, dvw});
        hit = TzStructure::find_in(bunch_of(u), w);
    }
    res.u = u;
    res.v = v;
    res.w = w;
    res.level = i;
    res.estimate = hit ? hit->dist + dvw : kInf;
    return res;
}

// max i < t with rank j in S_i = {x_j : j <= n^{1 - i/t}}, i.e. j^t <= n^{t-i}.
unsigned prioritized_start_level(Rank j, std::size_t n, unsigned t);

// A_0 = V; A_i = (coin flips at rate n^{-1/t}/2 over A_{i-1}, in id order) ∪ S_i.
LandmarkLevels sample_prioritized_levels(const PriorityRanking& r, unsigned t, Rng& rng);

// Landmarks drawn from `sources` only: A_0 = sources, A_i keeps each element of A_{i-1} with
// probability |sources|^{-1/t}. Resampled until A_{t-1} is nonempty.
LandmarkLevels sample_uniform_levels(std::size_t n, std::span<const Vertex> sources, unsigned t, Rng& rng);

}  // namespace priomet

#endif
