#ifndef PRIOMET_ULTRAMETRIC_HPP
#define PRIOMET_ULTRAMETRIC_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"
#include "priomet/rng.hpp"
#include "priomet/stretch.hpp"

namespace priomet {

/*
 * Random order that keeps the doubly exponential priority blocks
 * K_0 = {x_1, x_2}, K_b = {x_h : 2^{2^{b-1}} < h <= 2^{2^b}} in sequence and shuffles inside each.
 */
struct PriorityPermutation {
    std::vector<Vertex> order;          // order[p] = point at position p+1
    std::vector<std::uint32_t> position;  // 1-based position of each point
    std::vector<std::uint32_t> block;     // block index of each point
};

PriorityPermutation sample_priority_permutation(const PriorityRanking& r, std::uint64_t seed);

/*
 * Rooted labeled tree whose leaves are the input points; d(u, v) is the label of lca(u, v).
 */
class Ultrametric {
public:
    struct Node {
        double label = 0.0;
        int parent = -1;
        int level = 0;  // cluster level i (label 2^i * scale); leaves keep the level they split at
        std::vector<int> children;
        int point = -1;  // leaf: the input point
    };

    Ultrametric() = default;
    Ultrametric(std::vector<Node> nodes, std::size_t points);

    std::size_t points() const { return leaf_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return 0; }
    int leaf(Vertex v) const { return leaf_.at(v); }
    std::size_t height() const;

    // Label of the least common ancestor; throws InvalidArgument for unknown ids.
    double distance(Vertex u, Vertex v) const;
    std::vector<double> distance_matrix() const;

    nlohmann::json to_json() const;

private:
    std::vector<Node> nodes_;
    std::vector<int> leaf_;
    std::vector<int> depth_;
};

// Instrumentation of one build.
struct FrtTrace {
    double scale = 1.0;  // min positive distance; the build runs on d / scale
    int delta = 0;       // min integer with diameter / scale <= 2^delta
    double beta = 1.0;
    PriorityPermutation pi;
    struct Level {
        int i = 0;
        std::vector<std::uint32_t> cluster;  // dense cluster id of every point at level i
    };
    std::vector<Level> levels;  // levels[0] is the root level delta, then delta-1, ...
    // Per unordered pair (PairTable indexing): level at which the pair was separated and the
    // center that cut it.
    std::vector<int> cut_level;
    std::vector<Vertex> cutter;
};

// Modified FRT. Throws InvalidArgument for non-metric input.
Ultrametric build_frt_tree(const MetricSpace& m, const PriorityRanking& r, std::uint64_t seed,
                           FrtTrace* trace = nullptr);

// Seed of sample s in the Monte-Carlo estimate.
inline std::uint64_t frt_sample_seed(std::uint64_t seed, std::size_t s) { return Rng::derive(seed, s); }

struct ExpectedDistortion {
    PairTable mean_ratio;  // average over samples of d_T / d
    double min_ratio = 0.0;  // over all samples and pairs
    StretchReport report;    // bucketed by the higher-priority rank
};

// Samples run in parallel (OpenMP); per-pair sums are accumulated in sample order so the result
// equals the serial reference bit for bit.
ExpectedDistortion estimate_expected_distortion(const MetricSpace& m, const PriorityRanking& r,
                                                std::size_t samples, std::uint64_t seed);
ExpectedDistortion estimate_expected_distortion_serial(const MetricSpace& m, const PriorityRanking& r,
                                                       std::size_t samples, std::uint64_t seed);

}  // namespace priomet

#endif
