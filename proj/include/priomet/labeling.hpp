#ifndef PRIOMET_LABELING_HPP
#define PRIOMET_LABELING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/oracle.hpp"
#include "priomet/ranking.hpp"
#include "priomet/tz_core.hpp"

namespace priomet {

/*
 * Bunch distances and pivots of one vertex; two labels from the same build answer a query.
 */
struct VertexLabel {
    Vertex owner = 0;
    Rank rank = 0;
    unsigned start_level = 0;
    std::uint64_t build_id = 0;
    std::vector<BunchEntry> bunch;  // sorted by id; next_hop is not part of the label
    std::vector<Pivot> pivots;

    // id + distance per bunch entry and per pivot, plus rank and start level
    std::size_t size_words() const { return 2 * bunch.size() + 2 * pivots.size() + 2; }
    std::size_t entries() const { return bunch.size(); }
};

// Query from two labels; the higher-priority label drives the start level. Throws InvalidArgument
// for labels of different builds.
double label_query(const VertexLabel& a, const VertexLabel& b);

struct PrioritizedLabels {
    unsigned t = 1;
    std::uint64_t seed = 0;
    unsigned attempts = 0;
    std::size_t top_level_size = 0;  // |A_{t-1}|
    std::vector<VertexLabel> labels;

    double query(Vertex u, Vertex v) const { return label_query(labels[u], labels[v]); }
    std::size_t lower_bunch_size(Vertex v) const;  // |B_0 ∪ ... ∪ B_{t-2}|
    std::vector<std::size_t> lower_sizes;
};

inline constexpr unsigned kLabelRetries = 64;

// Rebuilds (up to 64 attempts) until |A_{t-1}| <= 8 n^{1/t} and, for every j >= 2,
// |B_0(x_j) ∪ ... ∪ B_{t-2}(x_j)| <= 16 n^{1/t} log j.
PrioritizedLabels build_prioritized_labels(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
                                           std::uint64_t seed, const ShortestPaths* sp = nullptr);
// Labels read off an existing oracle (same hierarchy, so queries agree bit for bit).
PrioritizedLabels labels_from_oracle(const PrioritizedOracle& o);
// t = floor(log n): stretch 2 ceil(log j) - 1 with O(log j) entries.
PrioritizedLabels build_log_labels(const WeightedGraph& g, const PriorityRanking& r, std::uint64_t seed,
                                   const ShortestPaths* sp = nullptr);

bool label_events_hold(const TzStructure& tz, const PriorityRanking& r);

/*
 * Labels answering S x V: landmarks are sampled from S only.
 */
struct SourceLabels {
    unsigned t = 1;
    std::uint64_t seed = 0;
    unsigned attempts = 0;
    std::vector<Vertex> sources;
    std::vector<char> is_source;
    std::vector<char> recipient;  // vertices that store their label
    std::vector<VertexLabel> labels;

    // Throws InvalidArgument unless one endpoint is a source and both are recipients.
    double query(Vertex u, Vertex v) const;
    double size_bound(Rank j) const;  // |S|^{1/t} (16 log j + 8)
};

// Retries until every recipient satisfies |B(v)| <= |S|^{1/t} (16 log j + 8) and every S x V pair
// (recipients only) has stretch <= 2t - 1. `recipients` empty means all vertices.
SourceLabels build_source_restricted_labels(const WeightedGraph& g, std::vector<Vertex> sources, unsigned t,
                                            const PriorityRanking& r, std::uint64_t seed = 0,
                                            const ShortestPaths* sp = nullptr, std::vector<Vertex> recipients = {});

/*
 * Fixed stretch 2t-1 with label size growing with the rank: block 1 = ranks 1..2^t uses the
 * t = log n labels, block i >= 2 = ranks (2^{(i-1)t}, 2^{it}] adds source-restricted labels whose
 * recipients are the vertices of blocks >= i.
 */
struct FullyPrioritizedLabels {
    unsigned t = 1;
    std::size_t m = 1;
    PrioritizedLabels base;
    std::vector<std::optional<SourceLabels>> blocks;  // index i for block i (0 and 1 unused)
    std::vector<std::size_t> block_of;                // block of each vertex
    PriorityRanking ranking;

    double query(Vertex u, Vertex v) const;
    std::size_t size_words(Vertex v) const;
};

std::size_t fully_prioritized_block(Rank j, unsigned t);

FullyPrioritizedLabels build_fully_prioritized_labels(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
                                                      std::uint64_t seed = 0);

/*
 * Exact labels for trees from a hierarchy of weighted centroids.
 */
struct SeparatorEntry {
    Vertex separator = 0;
    double dist = 0.0;
    unsigned phase = 0;
};

struct SeparatorLabel {
    Vertex owner = 0;
    std::vector<SeparatorEntry> entries;  // sorted by separator id

    std::size_t size_words() const { return 2 * entries.size(); }
};

struct TreeExactLabels {
    struct Phase {
        unsigned index = 0;
        std::size_t block_size = 0;
        unsigned levels = 0;            // separator levels executed
        std::size_t remaining_after = 0;  // vertices of the block still present afterwards
    };
    std::vector<SeparatorLabel> labels;
    std::vector<Phase> phases;

    double query(Vertex u, Vertex v) const;
};

double separator_query(const SeparatorLabel& a, const SeparatorLabel& b);

// Throws NotATreeError unless g is a tree.
TreeExactLabels build_tree_exact_labels(const WeightedGraph& g, const PriorityRanking& r);

nlohmann::json to_json(const VertexLabel& l);
nlohmann::json to_json(const SeparatorLabel& l);

}  // namespace priomet

#endif
