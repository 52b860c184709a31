#ifndef PRIOMET_EMBED_LP_HPP
#define PRIOMET_EMBED_LP_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include <json.hpp>

#include "priomet/math.hpp"
#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"
#include "priomet/stretch.hpp"

namespace priomet {

inline constexpr double kPInf = std::numeric_limits<double>::infinity();

// 1/p with 1/inf = 0.
double inv_p(double p);

/*
 * n x dim row-major coordinates in l_p. Coordinates of point x beyond active_prefix[x] are zero.
 */
struct EmbeddingMatrix {
    std::size_t n = 0;
    std::size_t dim = 0;
    double p = 2.0;
    std::vector<double> data;
    std::vector<std::size_t> active_prefix;
    nlohmann::json scale = nlohmann::json::object();

    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::size_t n, std::size_t dim, double p);

    const double* row(Vertex x) const { return data.data() + std::size_t(x) * dim; }
    double* row(Vertex x) { return data.data() + std::size_t(x) * dim; }
    double distance(Vertex u, Vertex v) const;
    // this ⊕ (factor · other)
    EmbeddingMatrix concat(const EmbeddingMatrix& other, double factor) const;
};

/*
 * Coordinates x -> scale_i · d(x, sets_i).
 */
struct FrechetMap {
    std::vector<std::vector<Vertex>> sets;
    std::vector<double> scale;

    std::size_t dim() const { return sets.size(); }
    EmbeddingMatrix evaluate(const MetricSpace& m, double p) const;
};

struct GammaParams {
    std::vector<Vertex> A;
    std::vector<double> dist_to_A;  // +inf everywhere when A is empty
};

GammaParams make_gamma_params(const MetricSpace& m, std::vector<Vertex> A);
// min{d(x,y)/2, d(x,A), d(y,A)}
double gamma_distance(const MetricSpace& m, Vertex x, Vertex y, const GammaParams& gp);

struct PhiResult {
    FrechetMap map;
    EmbeddingMatrix values;
    std::size_t levels = 0;       // I = ceil(log k)
    std::size_t repetitions = 0;  // J = ceil(C log k)
    unsigned attempts = 0;
    double worst_margin = kInf;  // min over K pairs of ||phi(u) - phi(v)|| / required bound
};

inline constexpr unsigned kEmbedRetries = 64;

// Sampled sets Q_ij = Q'_ij ∪ A (Q'_ij keeps each point of K with probability 2^{-i}), scaled by
// (IJ)^{-1/p}. Retries until ||phi(u) - phi(v)||_p >= gamma_A(u,v) / (24^{1/p} ceil(log k)) on K x K.
PhiResult phi_map(const MetricSpace& m, const std::vector<Vertex>& A, const std::vector<Vertex>& K, double p,
                  std::uint64_t seed, double C = 24.0);
double phi_required(double gamma, std::size_t k, double p);

struct RestrictedResult {
    EmbeddingMatrix values;  // (phi ⊕ d(., K)) · 2^{-1/p}
    PhiResult phi;
    double inner_alpha = 1.0;  // measured K x K contraction of phi
    double contraction = 0.0;  // measured K x X contraction of the final map
    double bound() const;      // 3 · 2^{1/p} · inner_alpha
    double p = 2.0;
};

RestrictedResult bourgain_restricted(const MetricSpace& m, const std::vector<Vertex>& K, double p, std::uint64_t seed);

struct PrioritizedLpEmbedding {
    struct Block {
        std::size_t index = 0;
        std::size_t k = 0;
        std::size_t dim = 0;
        double weight = 1.0;  // alpha_i
        double inner_alpha = 1.0;
        double contraction = 0.0;  // certified on S_i x X for the block map
        double bound = 0.0;        // 3 · 2^{1/p} · inner_alpha
    };
    EmbeddingMatrix map;
    std::vector<Block> blocks;
    double c = 1.0;
    double eps = 0.0;
    double weight_sum = 0.0;  // sum alpha_i^p (max alpha for p = inf)

    // certified contraction of x_j: block contraction / alpha_i
    double rank_bound(Rank j) const;
};

PrioritizedLpEmbedding embed_prioritized_lp(const MetricSpace& m, const PriorityRanking& r, double p, double eps,
                                            std::uint64_t seed);

struct PartialResult {
    EmbeddingMatrix values;  // (phi ⊕ d(., A ∪ K)) / 2^{1/p}
    PhiResult phi;
    unsigned attempts = 0;
    std::size_t pairs = 0;
    std::size_t by_f = 0;  // pairs certified by the new map
    std::size_t by_g = 0;  // pairs certified only by g
};

double log_k_clamped(std::size_t k);  // max(1, log k)

// Retries until for every (x, y) in K x X: ||f(x) - f(y)|| >= d/(1000 D log k) or ||g(x) - g(y)|| >= d/(2D).
PartialResult partial_bourgain(const MetricSpace& m, const std::vector<Vertex>& A, const std::vector<Vertex>& K,
                               const EmbeddingMatrix& g, double D, double p, std::uint64_t seed);

struct PrioritizedDimEmbedding {
    struct Step {
        std::size_t index = 0;
        std::size_t k = 0;
        std::size_t a_size = 0;
        std::size_t dim = 0;
        double weight = 1.0;
        double D = 0.0;            // 2^{2^i + 5 i^2}
        double D_next = 0.0;       // required contraction of F^{(i)} on S_{<=i} x X
        double contraction = 0.0;  // measured
        unsigned attempts = 0;
        std::size_t by_f = 0;
        std::size_t by_g = 0;
    };
    EmbeddingMatrix map;
    std::vector<Step> steps;
    double weight_sum = 0.0;
};

double dimension_step_bound(std::size_t i);  // 2^{2^i + 5 i^2}

PrioritizedDimEmbedding embed_prioritized_dimension(const MetricSpace& m, const PriorityRanking& r, double p,
                                                    std::uint64_t seed);

struct DistortionReport {
    StretchReport contraction;  // d / ||f(u) - f(v)|| bucketed by the higher priority
    PairTable contraction_pairs;
    double max_expansion = 0.0;
    std::size_t expansion_violations = 0;
};

DistortionReport measure_distortion(const EmbeddingMatrix& e, const MetricSpace& m, const PriorityRanking& r);

nlohmann::json to_json(const DistortionReport& d);

}  // namespace priomet

#endif
