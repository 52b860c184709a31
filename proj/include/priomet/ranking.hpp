#ifndef PRIOMET_RANKING_HPP
#define PRIOMET_RANKING_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "priomet/graph.hpp"

namespace priomet {

using Rank = std::uint32_t;  // 1-based; rank 1 is the highest priority

/*
 * Bijection between vertices (0-based ids) and priority ranks (1-based).
 */
class PriorityRanking {
public:
    PriorityRanking() = default;
    // `order[k]` is the vertex of rank k+1. Throws InvalidArgument unless a permutation of 0..n-1.
    explicit PriorityRanking(std::vector<Vertex> order);

    static PriorityRanking identity(std::size_t n);
    static PriorityRanking random(std::size_t n, std::uint64_t seed);

    std::size_t size() const { return order_.size(); }
    Rank rank_of(Vertex v) const { return rank_[v]; }
    Vertex vertex_of(Rank j) const { return order_[j - 1]; }
    const std::vector<Vertex>& order() const { return order_; }

    // The higher-priority endpoint of {u, v} first.
    std::pair<Vertex, Vertex> by_priority(Vertex u, Vertex v) const {
        return rank_[u] <= rank_[v] ? std::pair{u, v} : std::pair{v, u};
    }

private:
    std::vector<Vertex> order_;
    std::vector<Rank> rank_;
};

}  // namespace priomet

#endif
