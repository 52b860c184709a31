#include "priomet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "priomet/error.hpp"

namespace priomet {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw InvalidArgument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") references a vertex outside 0.." + std::to_string(n) + "-1");
        }
        if (e.u == e.v) throw SelfLoopError("self-loop at vertex " + std::to_string(e.u));
        if (!std::isfinite(e.w)) throw InvalidArgument("non-finite edge weight");
        if (e.w < 0) {
            throw NegativeWeightError("negative weight on edge (" + std::to_string(e.u) + ", " +
                                      std::to_string(e.v) + ")");
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.w < b.w;
    });
    for (const auto& e : edges) {
        if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) continue;
        edges_.push_back(e);
    }

    std::vector<std::size_t> deg(n_, 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offset_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offset_[v + 1] = offset_[v] + deg[v];
    adj_.resize(offset_[n_]);
    std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
    for (const auto& e : edges_) {
        adj_[fill[e.u]++] = {e.v, e.w};
        adj_[fill[e.v]++] = {e.u, e.w};
    }
    for (std::size_t v = 0; v < n_; ++v) {
        std::sort(adj_.begin() + offset_[v], adj_.begin() + offset_[v + 1],
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }
}

std::optional<std::size_t> WeightedGraph::port_of(Vertex v, Vertex neighbor) const {
    auto nb = neighbors(v);
    auto it = std::lower_bound(nb.begin(), nb.end(), neighbor,
                               [](const Arc& a, Vertex x) { return a.to < x; });
    if (it == nb.end() || it->to != neighbor) return std::nullopt;
    return static_cast<std::size_t>(it - nb.begin());
}

bool WeightedGraph::connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (const auto& a : neighbors(v)) {
            if (!seen[a.to]) {
                seen[a.to] = 1;
                ++count;
                stack.push_back(a.to);
            }
        }
    }
    return count == n_;
}

}  // namespace priomet
