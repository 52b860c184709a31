#ifndef PRIOMET_ROUTING_HPP
#define PRIOMET_ROUTING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"
#include "priomet/tz_core.hpp"

namespace priomet {

/*
 * Per-vertex tree routing table: DFS interval [dfs, f], the heavy child's DFS number h
 * (f + 1 without one), ports to the parent and heavy child (-1 when absent) and the number of
 * light edges between the root and this vertex.
 */
struct TreeRoutingEntry {
    std::uint32_t dfs = 0;
    std::uint32_t f = 0;
    std::uint32_t h = 0;
    std::int32_t port_parent = -1;
    std::int32_t port_heavy = -1;
    std::uint32_t light_depth = 0;

    static constexpr std::size_t kWords = 6;
};

// Target DFS number plus the port taken at each light vertex of the root-to-target path.
struct TreeRoutingLabel {
    std::uint32_t dfs = 0;
    std::vector<std::uint32_t> ports;

    std::size_t size_words() const { return 1 + ports.size(); }
};

/*
 * Heavy-light routing on a rooted tree whose vertices are weighted by priority; the heavy child
 * is the child of largest subtree weight (any child above half of its parent's weight is it), so a
 * light edge at least halves the subtree weight.
 */
struct TreeRouting {
    Vertex root = 0;
    std::vector<Vertex> members;  // sorted global ids; everything below is parallel to it
    std::vector<Vertex> parent;   // global id; the root is its own parent
    std::vector<TreeRoutingEntry> table;
    std::vector<TreeRoutingLabel> labels;
    std::vector<double> weight;          // p(v)
    std::vector<double> subtree_weight;  // s_v
    std::vector<char> heavy;             // the edge to the parent is heavy
    std::vector<Vertex> by_dfs;          // global id of each DFS number

    std::optional<std::size_t> local(Vertex v) const;
    const TreeRoutingEntry& entry(Vertex v) const;
    const TreeRoutingLabel& label(Vertex v) const;
};

// p(x_j) = 1 / (2^i (i+1)^2) with S_0 = {x_1}, S_i = (2^{i-1}, 2^i].
double tree_routing_weight(Rank j);
// log j + 2 log(log j + 2) + 2 for j >= 2; 3 for j = 1.
double tree_label_bound(Rank j);

// Throws NotATreeError unless `tree` is a tree.
TreeRouting build_tree_routing(const WeightedGraph& tree, const PriorityRanking& r, Vertex root);

// Next port at the vertex holding `e` for a message carrying `label`; nullopt on arrival.
// Throws RoutingError for a corrupted label.
std::optional<std::uint32_t> tree_next_port(const TreeRoutingEntry& e, const TreeRoutingLabel& label,
                                            std::size_t degree);

struct RouteResult {
    std::vector<Vertex> hops;  // visited vertices, source first
    double length = 0.0;
    Vertex tree_root = 0;  // general routing: the tree used
    unsigned level = 0;    // general routing: the chosen level h
    std::size_t header_words = 0;
};

// Hop-by-hop simulation on `g` (the tree itself, or a graph containing it) using only tables and the label.
RouteResult route_tree(const WeightedGraph& g, const TreeRouting& tr, Vertex source, const TreeRoutingLabel& label);

struct GeneralRoutingLabel {
    struct Item {
        unsigned level = 0;
        Vertex tree = 0;  // p_k(v)
        TreeRoutingLabel label;
    };
    Vertex owner = 0;
    std::vector<Item> items;  // levels i(v) .. t-1

    std::size_t size_words() const;
};

/*
 * Routing over the cover of shortest-path trees T_z, z a landmark, spanning C(z) = {x : z in B(x)}.
 */
class GeneralRoutingScheme {
public:
    unsigned t() const { return tz_.t(); }
    std::size_t size() const { return tz_.size(); }
    const TzStructure& structure() const { return tz_; }
    const GeneralRoutingLabel& label(Vertex v) const { return labels_[v]; }
    const TreeRouting& tree(Vertex z) const;
    unsigned start_level(Vertex v) const { return start_[v]; }
    unsigned attempts() const { return attempts_; }

    // Bunch ids plus one tree table per landmark in the bunch.
    std::size_t table_words(Vertex v) const;

    // Source-side tree choice, then hop-by-hop delivery. Throws RoutingError if undeliverable.
    RouteResult route(const WeightedGraph& g, Vertex source, const GeneralRoutingLabel& target) const;

    // max over scanned levels k of d(v, p_k(v)) / (2 (k - i) d(u, v)) (0 when nothing to check).
    double invariant_ratio(const MetricSpace& d, Vertex u, Vertex v) const;

    friend GeneralRoutingScheme build_general_routing(const WeightedGraph&, const PriorityRanking&, unsigned,
                                                      std::uint64_t, const ShortestPaths*);

private:
    TzStructure tz_;
    std::vector<unsigned> start_;
    std::vector<std::int32_t> tree_index_;  // landmark -> trees_ index
    std::vector<TreeRouting> trees_;
    std::vector<GeneralRoutingLabel> labels_;
    unsigned attempts_ = 0;
};

// Rebuilds under the same acceptance events as the prioritized labels.
GeneralRoutingScheme build_general_routing(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
                                           std::uint64_t seed, const ShortestPaths* sp = nullptr);

// 4 ceil(t log j / log n) - 3, i.e. 4(t - i(x_j)) - 3.
double general_routing_stretch_bound(Rank j, std::size_t n, unsigned t);

}  // namespace priomet

#endif
