#ifndef PRIOMET_GRAPH_HPP
#define PRIOMET_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace priomet {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;
    double w;
};

struct Arc {
    Vertex to;
    double w;
};

/*
 * Undirected weighted graph. Adjacency lists are sorted by neighbor id; the position of a
 * neighbor in that list is the port number used by the routing schemes. Parallel edges are
 * merged keeping the lighter one.
 */
class WeightedGraph {
public:
    WeightedGraph() = default;
    // Throws SelfLoopError, NegativeWeightError or InvalidArgument (bad id, non-finite weight).
    WeightedGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const Arc> neighbors(Vertex v) const {
        return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }

    std::optional<std::size_t> port_of(Vertex v, Vertex neighbor) const;
    const Arc& arc_at(Vertex v, std::size_t port) const { return adj_[offset_[v] + port]; }

    bool connected() const;
    bool is_tree() const { return n_ >= 1 && edges_.size() + 1 == n_ && connected(); }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offset_{0};
    std::vector<Arc> adj_;
};

}  // namespace priomet

#endif
