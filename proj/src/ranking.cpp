#include "priomet/ranking.hpp"

#include <numeric>

#include "priomet/error.hpp"
#include "priomet/rng.hpp"

namespace priomet {

PriorityRanking::PriorityRanking(std::vector<Vertex> order) : order_(std::move(order)) {
    const std::size_t n = order_.size();
    rank_.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        Vertex v = order_[k];
        if (v >= n || rank_[v] != 0) throw InvalidArgument("ranking is not a permutation of the vertices");
        rank_[v] = static_cast<Rank>(k + 1);
    }
}

PriorityRanking PriorityRanking::identity(std::size_t n) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    return PriorityRanking(std::move(order));
}

PriorityRanking PriorityRanking::random(std::size_t n, std::uint64_t seed) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    Rng rng(seed);
    rng.shuffle(std::span<Vertex>(order));
    return PriorityRanking(std::move(order));
}

}  // namespace priomet
