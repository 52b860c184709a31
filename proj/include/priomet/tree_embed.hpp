#ifndef PRIOMET_TREE_EMBED_HPP
#define PRIOMET_TREE_EMBED_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"

namespace priomet {

/*
 * A priority function alpha(1), alpha(2), ... Either a finite table or a closed form; closed
 * forms may carry a certified bound on the tail sum over i > n of 1/alpha(i).
 */
class PriorityFunction {
public:
    using Tail = std::function<double(std::size_t)>;

    static PriorityFunction table(std::vector<double> values, std::string name = "table");
    static PriorityFunction closed_form(std::function<double(Rank)> fn, std::string name, Tail tail = {});

    double operator()(Rank j) const;
    const std::string& name() const { return name_; }
    // Largest rank with a defined value; 0 means unbounded (closed form).
    std::size_t support() const { return values_ ? values_->size() : 0; }
    bool has_tail_bound() const { return static_cast<bool>(tail_); }
    double tail_bound(std::size_t n) const { return tail_(n); }
    std::vector<double> values(std::size_t n) const;

private:
    std::string name_;
    std::optional<std::vector<double>> values_;
    std::function<double(Rank)> fn_;
    Tail tail_;
};

// alpha(1) = 1 + eps, alpha(j) = j (log j)^{1+eps} / c for j >= 2, with the largest c that keeps
// the finite sum over j <= n plus the integral tail bound at most 1.
PriorityFunction alpha_preset_eps(double eps, std::size_t n);
double alpha_eps_constant(double eps, std::size_t n);

PriorityFunction alpha_geometric();  // 2^j
PriorityFunction alpha_linear();     // j
PriorityFunction alpha_constant(double c);
// j log j loglog j for j >= 3, extended by alpha(1) = alpha(2) = alpha(3) to stay non-decreasing.
PriorityFunction alpha_jlogloglog();

struct PhiReport {
    bool in_phi = false;
    bool non_decreasing = true;
    std::vector<double> partial_sums;  // partial_sums[k] = sum_{i <= k+1} 1/alpha(i)
    double tail = 0.0;                 // certified tail added to the finite sum (0 for tables)
    double total = 0.0;
    bool tail_certified = false;       // false: the verdict covers ranks 1..n only
};

PhiReport validate_phi(const PriorityFunction& alpha, std::size_t n);

/*
 * Spanning tree over the points of a metric with edge lengths d(u, v).
 */
class DominatingTree {
public:
    DominatingTree() = default;
    DominatingTree(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double distance(Vertex u, Vertex v) const { return dist_[std::size_t(u) * n_ + v]; }
    const std::vector<double>& distances() const { return dist_; }
    // Vertices of the tree path from u to v, both included.
    std::vector<Vertex> path(Vertex u, Vertex v) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> dist_;
    std::vector<Vertex> parent_;  // parent_[u * n + v]: next vertex from v towards u
};

// Minimum spanning tree of the complete graph under w({x_j, x_i}) = alpha(j) d(x_j, x_i), j < i,
// ties broken by (min endpoint id, max endpoint id). Throws InvalidArgument unless alpha in Phi.
DominatingTree embed_single_tree(const MetricSpace& m, const PriorityRanking& r, const PriorityFunction& alpha);
// Same tree, with the Phi check skipped (used to study functions outside Phi).
DominatingTree prioritized_mst(const MetricSpace& m, const PriorityRanking& r, const PriorityFunction& alpha);

struct CycleWitnessRow {
    Edge removed;
    Rank rank = 0;          // rank j of the higher-priority endpoint
    Vertex x = 0;           // x_j
    Vertex u = 0;           // partner
    double tree_distance = 0.0;
    double distance = 0.0;
    double distortion = 0.0;
    double alpha = 0.0;     // alpha(j); the row certifies distortion >= alpha
    bool violated = false;
};

struct CycleWitness {
    std::size_t n_prime = 0;     // smallest n' with sum_{i <= n'} 1/alpha(i) > 1
    std::size_t n = 0;           // cycle length
    std::vector<std::size_t> a;  // a_i = floor(n / (alpha(i) + 1)), i = 1..n'
    std::vector<Vertex> positions;  // cycle position of x_1..x_{n'}
    PriorityRanking ranking;
    std::vector<CycleWitnessRow> rows;  // one per spanning tree (removed edge)
    bool all_violated = false;
};

// Builds the cycle instance and exhaustively checks every spanning tree. Throws InvalidArgument
// when no n' <= max_terms exists (alpha looks admissible).
CycleWitness cycle_lower_bound_check(const PriorityFunction& alpha, std::size_t max_terms = 1u << 20);

}  // namespace priomet

#endif
