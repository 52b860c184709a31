#ifndef PRIOMET_ORACLE_HPP
#define PRIOMET_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"
#include "priomet/tz_core.hpp"

namespace priomet {

/*
 * Distance oracle with prioritized stretch: high-priority vertices are forced into the upper
 * landmark levels, and a query starts at the level of its higher-priority endpoint.
 */
class PrioritizedOracle {
public:
    PrioritizedOracle() = default;

    std::size_t size() const { return rank_.size(); }
    unsigned t() const { return tz_.t(); }
    std::uint64_t seed() const { return seed_; }
    unsigned attempts() const { return attempts_; }
    Rank rank_of(Vertex v) const { return rank_[v]; }
    unsigned start_level(Vertex v) const { return start_[v]; }
    const TzStructure& structure() const { return tz_; }

    double query(Vertex u, Vertex v) const;
    QueryResult query_traced(Vertex u, Vertex v) const;
    // u-v walk (vertex sequence) whose length is query(u, v); empty when u == v.
    std::vector<Vertex> query_path(Vertex u, Vertex v) const;

    std::size_t total_bunch_entries() const { return tz_.total_entries(); }
    // id + distance + next hop per bunch entry, id + distance per pivot, rank + start level.
    std::size_t size_words() const;

    // Little-endian binary: magic, version, n, t, seed, attempts, then per vertex
    // rank, start level, top level, pivots and bunch entries.
    void save(std::ostream& out) const;
    static PrioritizedOracle load(std::istream& in);
    std::string serialize() const;

    friend PrioritizedOracle build_tz_prioritized(const WeightedGraph&, const PriorityRanking&, unsigned,
                                                  std::uint64_t, const ShortestPaths*);

private:
    std::uint64_t seed_ = 0;
    unsigned attempts_ = 0;
    std::vector<Rank> rank_;
    std::vector<unsigned> start_;
    TzStructure tz_;
};

inline constexpr unsigned kOracleRetries = 32;

// Retries (fresh derived seed, up to 32 attempts) until the total bunch size is at most
// 4 t n^{1+1/t}. `sp` may be supplied to reuse precomputed shortest paths.
PrioritizedOracle build_tz_prioritized(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
                                       std::uint64_t seed, const ShortestPaths* sp = nullptr);

double oracle_size_budget(std::size_t n, unsigned t);  // 4 t n^{1+1/t}

// 2 ceil(t log j / log n) - 1, computed exactly as 2(t - i(x_j)) - 1.
double prioritized_stretch_bound(Rank j, std::size_t n, unsigned t);

/*
 * Answers K x V queries: d~(v, k_u) + d(k_u, u) with an inner (2t-1)-stretch oracle on the
 * metric restricted to K and, per vertex u, its nearest point k_u of K.
 */
class SourceRestrictedOracle {
public:
    SourceRestrictedOracle() = default;
    SourceRestrictedOracle(const MetricSpace& d, std::vector<Vertex> sources, unsigned t, std::uint64_t seed);

    bool is_source(Vertex v) const { return index_[v] >= 0; }
    const std::vector<Vertex>& sources() const { return sources_; }
    unsigned t() const { return inner_.t(); }
    // Throws InvalidArgument when neither endpoint is a source.
    double query(Vertex a, Vertex b) const;
    double inner_query(Vertex ka, Vertex kb) const;  // on source ids
    Vertex anchor(Vertex u) const { return anchor_[u]; }
    double anchor_distance(Vertex u) const { return anchor_dist_[u]; }
    std::size_t size_words() const;

private:
    std::vector<Vertex> sources_;
    std::vector<int> index_;  // position in sources_, or -1
    std::vector<Vertex> anchor_;
    std::vector<double> anchor_dist_;
    TzStructure inner_;  // over the restricted metric, indices into sources_
};

SourceRestrictedOracle build_source_restricted_oracle(const WeightedGraph& g, std::vector<Vertex> sources,
                                                      unsigned t, std::uint64_t seed = 0);

/*
 * f with f(1) = 2, its iterates F(0) = 1, F(k) = f(F(k-1)), and the phase count T.
 */
struct IterFunction {
    static constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

    std::string name;
    std::function<std::uint64_t(std::uint64_t)> f;  // saturates at kUnbounded
    unsigned T = 1;

    std::uint64_t F(unsigned k) const;
};

// Presets 1..5 of the space/stretch tradeoff; T is raised if needed so that F(T) >= log n.
IterFunction preset(int which, std::size_t n);

// floor(log n / log(n / j)) evaluated exactly; kUnbounded for j = n.
std::uint64_t tau(Rank j, std::size_t n);

class ComposedOracle {
public:
    struct Level {
        std::uint64_t F = 0;
        unsigned t_nominal = 0;   // F - 1
        std::size_t prefix = 0;   // S_i = ranks 1..prefix
        SourceRestrictedOracle oracle;
    };

    double query(Vertex u, Vertex v) const;
    // Index of the minimal level containing rank j, or -1.
    int level_of(Rank j) const;
    const std::vector<Level>& levels() const { return levels_; }
    const SourceRestrictedOracle& fallback() const { return fallback_; }
    const IterFunction& function() const { return fn_; }
    // min{4 f(tau(j)) - 5, 2 ceil(log n) - 1}
    double stretch_bound(Rank j) const;
    std::size_t size_words() const;

    friend ComposedOracle build_composed_oracle(const WeightedGraph&, const PriorityRanking&, const IterFunction&,
                                                std::uint64_t);

private:
    std::size_t n_ = 0;
    IterFunction fn_;
    PriorityRanking ranking_;
    std::vector<Level> levels_;
    SourceRestrictedOracle fallback_;  // plain (2t-1)-stretch oracle on all of V, t = ceil(log n)
};

ComposedOracle build_composed_oracle(const WeightedGraph& g, const PriorityRanking& r, const IterFunction& fn,
                                     std::uint64_t seed = 0);

}  // namespace priomet

#endif
