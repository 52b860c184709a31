#ifndef PRIOMET_STRETCH_HPP
#define PRIOMET_STRETCH_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"

namespace priomet {

// Pure, thread-safe pairwise estimate (distance oracle, labels, tree distance, ...).
using PairEstimate = std::function<double(Vertex, Vertex)>;
using RankBound = std::function<double(Rank)>;

/*
 * One value per unordered pair {u, v}, u < v, stored in row-major upper-triangle order.
 */
class PairTable {
public:
    PairTable() = default;
    explicit PairTable(std::size_t n) : n_(n), values_(n * (n - (n > 0)) / 2) {}

    std::size_t n() const { return n_; }
    std::size_t pair_count() const { return values_.size(); }
    std::size_t index(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        return std::size_t(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
    }
    double operator()(Vertex u, Vertex v) const { return values_[index(u, v)]; }
    double& at(Vertex u, Vertex v) { return values_[index(u, v)]; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

// fn(u, v) for every pair u < v (OpenMP-parallel; fn must be a pure read).
PairTable evaluate_pairs(std::size_t n, const PairEstimate& fn);
// Serial reference with identical output.
PairTable evaluate_pairs_serial(std::size_t n, const PairEstimate& fn);

struct RankBucket {
    Rank rank_lo = 0;  // bucket [rank_lo, rank_hi]; rank_lo = 2^k, rank_hi = min(n, 2^{k+1}-1)
    Rank rank_hi = 0;
    std::size_t pairs = 0;
    double max_stretch = 0.0;
    double mean_stretch = 0.0;
    double min_stretch = 0.0;
};

enum class Contract { NonContractive, NonExpansive, None };

struct StretchReport {
    std::vector<RankBucket> buckets;
    double global_max = 0.0;
    double global_min = 0.0;
    std::size_t pairs = 0;
    // Pairs breaking the structure's contract: an underestimate for NonContractive, an
    // expansion for NonExpansive (both beyond relative tolerance 1e-9).
    std::size_t violations = 0;
    std::size_t size_words = 0;
};

// Bucket index k of rank j, i.e. j in [2^k, 2^{k+1}).
std::size_t rank_bucket(Rank j);

// Aggregates per-pair ratios by the rank of the higher-priority endpoint.
StretchReport summarize_ratios(const PairTable& ratios, const PriorityRanking& ranking);

// For each pair (x_j, x_i), j < i, records estimate / truth attributed to rank j.
StretchReport measure_prioritized_stretch(const PairEstimate& estimate, const MetricSpace& truth,
                                          const PriorityRanking& ranking,
                                          Contract contract = Contract::NonContractive);

struct BoundCheck {
    std::size_t checked = 0;
    std::size_t failed = 0;
    double worst_ratio_to_bound = 0.0;  // max over pairs of ratio / bound(j)
};

// Counts pairs whose ratio exceeds bound(j) (relative tolerance 1e-9), j the higher priority.
BoundCheck check_rank_bound(const PairTable& ratios, const PriorityRanking& ranking,
                            const RankBound& bound);

}  // namespace priomet

#endif
