#include "priomet/embed_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "priomet/error.hpp"
#include "priomet/frechet.hpp"
#include "priomet/math.hpp"
#include "priomet/rng.hpp"

namespace priomet {

namespace {

std::vector<double> set_distances(const MetricSpace& m, const std::vector<Vertex>& set) {
    std::vector<double> out(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) out[x] = m.dist_to_set(Vertex(x), set);
    return out;
}

// d(x, y) / ||f(x) - f(y)||, +inf for a collapsed pair
double contraction(const EmbeddingMatrix& f, const MetricSpace& m, Vertex x, Vertex y) {
    const double e = f.distance(x, y);
    const double d = m(x, y);
    if (d == 0.0) return 1.0;
    return e > 0.0 ? d / e : kInf;
}

void check_p(double p) {
    if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
}

std::vector<std::vector<Vertex>> blocks_by(const PriorityRanking& r, std::size_t (*block)(std::uint64_t)) {
    std::vector<std::vector<Vertex>> out;
    for (Rank j = 1; j <= r.size(); ++j) {
        std::size_t b = block(j);
        if (out.size() <= b) out.resize(b + 1);
        out[b].push_back(r.vertex_of(j));
    }
    return out;
}

}  // namespace

double inv_p(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

EmbeddingMatrix::EmbeddingMatrix(std::size_t n_, std::size_t dim_, double p_)
    : n(n_), dim(dim_), p(p_), data(n_ * dim_, 0.0), active_prefix(n_, dim_) {}

double EmbeddingMatrix::distance(Vertex u, Vertex v) const { return lp_distance(row(u), row(v), dim, p); }

EmbeddingMatrix EmbeddingMatrix::concat(const EmbeddingMatrix& other, double factor) const {
    if (other.n != n) throw InvalidArgument("embedding sizes differ");
    EmbeddingMatrix out(n, dim + other.dim, p);
    for (std::size_t x = 0; x < n; ++x) {
        std::copy(row(Vertex(x)), row(Vertex(x)) + dim, out.row(Vertex(x)));
        const double* src = other.row(Vertex(x));
        double* dst = out.row(Vertex(x)) + dim;
        for (std::size_t c = 0; c < other.dim; ++c) dst[c] = factor * src[c];
    }
    return out;
}

EmbeddingMatrix FrechetMap::evaluate(const MetricSpace& m, double p) const {
    const std::size_t n = m.size(), k = sets.size();
    EmbeddingMatrix e(n, k, p);
    if (k == 0) return e;
    std::vector<double> raw = frechet_coordinates(m, sets);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < k; ++i) e.data[x * k + i] = scale[i] * raw[x * k + i];
    return e;
}

GammaParams make_gamma_params(const MetricSpace& m, std::vector<Vertex> A) {
    GammaParams gp;
    gp.dist_to_A = set_distances(m, A);
    gp.A = std::move(A);
    return gp;
}

double gamma_distance(const MetricSpace& m, Vertex x, Vertex y, const GammaParams& gp) {
    return std::min({m(x, y) / 2.0, gp.dist_to_A[x], gp.dist_to_A[y]});
}

double phi_required(double gamma, std::size_t k, double p) {
    return gamma / (std::pow(24.0, inv_p(p)) * double(std::max(1u, ceil_log2(k))));
}

PhiResult phi_map(const MetricSpace& m, const std::vector<Vertex>& A, const std::vector<Vertex>& K, double p,
                  std::uint64_t seed, double C) {
    check_p(p);
    const std::size_t k = K.size();
    if (k == 0) throw InvalidArgument("phi needs a nonempty K");
    for (Vertex a : A)
        if (std::find(K.begin(), K.end(), a) != K.end()) throw InvalidArgument("A and K must be disjoint");
    PhiResult res;
    res.levels = ceil_log2(k);
    res.repetitions = k < 2 ? 0 : static_cast<std::size_t>(std::ceil(C * std::log2(double(k))));
    const std::size_t dim = res.levels * res.repetitions;
    const double scale = dim == 0 ? 1.0 : std::pow(double(dim), -inv_p(p));
    const GammaParams gp = make_gamma_params(m, A);

    for (unsigned a = 0; a < kEmbedRetries; ++a) {
        Rng rng(Rng::derive(seed, a));
        FrechetMap map;
        for (std::size_t i = 1; i <= res.levels; ++i) {
            const double rate = std::ldexp(1.0, -int(i));
            for (std::size_t j = 0; j < res.repetitions; ++j) {
                std::vector<Vertex> q;
                for (Vertex x : K)
                    if (rng.bernoulli(rate)) q.push_back(x);
                q.insert(q.end(), A.begin(), A.end());
                map.sets.push_back(std::move(q));
                map.scale.push_back(scale);
            }
        }
        EmbeddingMatrix values = map.evaluate(m, p);
        double margin = kInf;
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = s + 1; t < k; ++t) {
                const double req = phi_required(gamma_distance(m, K[s], K[t], gp), k, p);
                if (req <= 0.0) continue;
                margin = std::min(margin, values.distance(K[s], K[t]) / req);
            }
        if (margin == kInf || approx_le(1.0, margin)) {
            res.map = std::move(map);
            res.values = std::move(values);
            res.attempts = a + 1;
            res.worst_margin = margin;
            return res;
        }
    }
    throw RetryExhausted("phi lower bound failed in all " + std::to_string(kEmbedRetries) + " attempts");
}

double RestrictedResult::bound() const { return 3.0 * std::pow(2.0, inv_p(p)) * inner_alpha; }

RestrictedResult bourgain_restricted(const MetricSpace& m, const std::vector<Vertex>& K, double p, std::uint64_t seed) {
    check_p(p);
    const std::size_t n = m.size();
    RestrictedResult res;
    res.p = p;
    res.phi = phi_map(m, {}, K, p, seed);
    res.inner_alpha = 1.0;
    for (std::size_t s = 0; s < K.size(); ++s)
        for (std::size_t t = s + 1; t < K.size(); ++t)
            res.inner_alpha = std::max(res.inner_alpha, contraction(res.phi.values, m, K[s], K[t]));

    EmbeddingMatrix h(n, 1, p);
    const std::vector<double> dk = set_distances(m, K);
    for (std::size_t x = 0; x < n; ++x) h.data[x] = dk[x];
    const double half = std::pow(2.0, -inv_p(p));
    res.values = EmbeddingMatrix(n, 0, p).concat(res.phi.values, half).concat(h, half);
    res.values.scale = {{"factor", half}, {"phi_scale", res.phi.map.scale.empty() ? 1.0 : res.phi.map.scale[0]}};

    for (Vertex k : K)
        for (std::size_t x = 0; x < n; ++x)
            if (x != k) res.contraction = std::max(res.contraction, contraction(res.values, m, k, Vertex(x)));
    return res;
}

double PrioritizedLpEmbedding::rank_bound(Rank j) const {
    const Block& b = blocks.at(double_exp_block(j));
    return b.contraction / b.weight;
}

PrioritizedLpEmbedding embed_prioritized_lp(const MetricSpace& m, const PriorityRanking& r, double p, double eps,
                                            std::uint64_t seed) {
    check_p(p);
    if (!(eps > 0.0)) throw InvalidArgument("eps must be > 0");
    const std::size_t n = m.size();
    if (r.size() != n) throw InvalidArgument("ranking size does not match the metric");
    if (n < 2) throw InvalidArgument("need at least 2 points");

    PrioritizedLpEmbedding out;
    out.eps = eps;
    const auto blocks = blocks_by(r, double_exp_block);
    const std::size_t I = blocks.size() - 1;
    if (std::isinf(p)) {
        out.c = 1.0;
    } else {
        double s = std::pow(double(I + 1), -eps) / eps;
        for (std::size_t i = 0; i <= I; ++i) s += std::pow(double(i + 1), -(1.0 + eps));
        out.c = std::pow(1.0 / s, 1.0 / p);
    }
    EmbeddingMatrix f(n, 0, p);
    for (std::size_t i = 0; i <= I; ++i) {
        PrioritizedLpEmbedding::Block b;
        b.index = i;
        b.k = blocks[i].size();
        b.weight = std::isinf(p) ? 1.0 : out.c * std::pow(double(i + 1), -(1.0 + eps) / p);
        RestrictedResult rr = bourgain_restricted(m, blocks[i], p, Rng::derive(seed, i));
        b.dim = rr.values.dim;
        b.inner_alpha = rr.inner_alpha;
        b.contraction = rr.contraction;
        b.bound = rr.bound();
        f = f.concat(rr.values, b.weight);
        out.weight_sum = std::isinf(p) ? std::max(out.weight_sum, b.weight) : out.weight_sum + std::pow(b.weight, p);
        out.blocks.push_back(b);
    }
    f.scale = {{"c", out.c}, {"eps", eps}, {"weight_sum", out.weight_sum}};
    out.map = std::move(f);
    return out;
}

double log_k_clamped(std::size_t k) { return std::max(1.0, std::log2(double(std::max<std::size_t>(k, 1)))); }

PartialResult partial_bourgain(const MetricSpace& m, const std::vector<Vertex>& A, const std::vector<Vertex>& K,
                               const EmbeddingMatrix& g, double D, double p, std::uint64_t seed) {
    check_p(p);
    const std::size_t n = m.size();
    if (g.n != n) throw InvalidArgument("existing map does not match the metric");
    std::vector<Vertex> AK = A;
    AK.insert(AK.end(), K.begin(), K.end());
    EmbeddingMatrix h(n, 1, p);
    const std::vector<double> dak = set_distances(m, AK);
    for (std::size_t x = 0; x < n; ++x) h.data[x] = dak[x];
    const double half = std::pow(2.0, -inv_p(p));
    const double logk = log_k_clamped(K.size());

    for (unsigned a = 0; a < kEmbedRetries; ++a) {
        PartialResult res;
        res.phi = phi_map(m, A, K, p, Rng::derive(seed, a));
        res.values = EmbeddingMatrix(n, 0, p).concat(res.phi.values, half).concat(h, half);
        bool ok = true;
        for (Vertex x : K) {
            for (std::size_t y = 0; y < n && ok; ++y) {
                if (y == x) continue;
                const double d = m(x, Vertex(y));
                ++res.pairs;
                if (approx_le(d / (1000.0 * D * logk), res.values.distance(x, Vertex(y)))) {
                    ++res.by_f;
                } else if (g.dim > 0 && approx_le(d / (2.0 * D), g.distance(x, Vertex(y)))) {
                    ++res.by_g;
                } else {
                    ok = false;
                }
            }
            if (!ok) break;
        }
        if (ok) {
            res.attempts = a + 1;
            return res;
        }
    }
    throw RetryExhausted("partial embedding failed its certificate in all " + std::to_string(kEmbedRetries) +
                         " attempts");
}

double dimension_step_bound(std::size_t i) {
    return std::ldexp(1.0, int(std::ldexp(1.0, int(i))) + 5 * int(i * i));
}

PrioritizedDimEmbedding embed_prioritized_dimension(const MetricSpace& m, const PriorityRanking& r, double p,
                                                    std::uint64_t seed) {
    check_p(p);
    const std::size_t n = m.size();
    if (r.size() != n) throw InvalidArgument("ranking size does not match the metric");
    if (n < 2) throw InvalidArgument("need at least 2 points");
    const auto blocks = blocks_by(r, triple_exp_block);

    PrioritizedDimEmbedding out;
    EmbeddingMatrix F(n, 0, p);
    std::vector<Vertex> A, covered;
    std::vector<std::size_t> prefix_of_block;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        PrioritizedDimEmbedding::Step st;
        st.index = i;
        st.k = blocks[i].size();
        st.a_size = A.size();
        st.D = dimension_step_bound(i);
        st.D_next = dimension_step_bound(i + 1);
        st.weight = std::isinf(p) ? 1.0 : std::pow(6.0 / (std::numbers::pi * std::numbers::pi * double((i + 1) * (i + 1))),
                                                   1.0 / p);
        std::vector<Vertex> next_covered = covered;
        next_covered.insert(next_covered.end(), blocks[i].begin(), blocks[i].end());
        bool certified = false;
        for (unsigned a = 0; a < kEmbedRetries && !certified; ++a) {
            PartialResult pr = partial_bourgain(m, A, blocks[i], F, st.D, p, Rng::derive(seed, (i << 16) + a));
            EmbeddingMatrix G = F.concat(pr.values, st.weight);
            double worst = 0.0;
            for (Vertex x : next_covered)
                for (std::size_t y = 0; y < n; ++y)
                    if (y != x) worst = std::max(worst, contraction(G, m, x, Vertex(y)));
            st.attempts = a + 1;
            st.contraction = worst;
            st.by_f = pr.by_f;
            st.by_g = pr.by_g;
            if (approx_le(worst, st.D_next)) {
                certified = true;
                st.dim = pr.values.dim;
                F = std::move(G);
            }
        }
        if (!certified)
            throw RetryExhausted("contraction certificate failed at step " + std::to_string(i) + " (measured " +
                                 std::to_string(st.contraction) + ")");
        out.weight_sum = std::isinf(p) ? std::max(out.weight_sum, st.weight) : out.weight_sum + std::pow(st.weight, p);
        prefix_of_block.push_back(F.dim);
        out.steps.push_back(st);
        A.insert(A.end(), blocks[i].begin(), blocks[i].end());
        covered = std::move(next_covered);
    }
    for (Rank j = 1; j <= n; ++j) F.active_prefix[r.vertex_of(j)] = prefix_of_block[triple_exp_block(j)];
    F.scale = {{"weight_sum", out.weight_sum}};
    out.map = std::move(F);
    return out;
}

DistortionReport measure_distortion(const EmbeddingMatrix& e, const MetricSpace& m, const PriorityRanking& r) {
    const std::size_t n = m.size();
    if (e.n != n || r.size() != n) throw InvalidArgument("embedding, metric and ranking sizes differ");
    DistortionReport rep;
    rep.contraction_pairs = PairTable(n);
    PairTable expansion(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const double d = m(Vertex(u), Vertex(v));
            const double f = e.distance(Vertex(u), Vertex(v));
            const double ex = d > 0.0 ? f / d : (f > 0.0 ? kInf : 1.0);
            rep.max_expansion = std::max(rep.max_expansion, ex);
            if (ex > 1.0 + kRelTol) ++rep.expansion_violations;
            rep.contraction_pairs.at(Vertex(u), Vertex(v)) = contraction(e, m, Vertex(u), Vertex(v));
        }
    rep.contraction = summarize_ratios(rep.contraction_pairs, r);
    rep.contraction.violations = rep.expansion_violations;
    rep.contraction.size_words = n * e.dim;
    return rep;
}

nlohmann::json to_json(const DistortionReport& d) {
    nlohmann::json buckets = nlohmann::json::array();
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    for (const auto& b : d.contraction.buckets)
        buckets.push_back({{"rank_lo", b.rank_lo},
                           {"rank_hi", b.rank_hi},
                           {"pairs", b.pairs},
                           {"max_contraction", num(b.max_stretch)},
                           {"mean_contraction", num(b.mean_stretch)}});
    return {{"buckets", buckets},
            {"max_contraction", num(d.contraction.global_max)},
            {"max_expansion", num(d.max_expansion)},
            {"expansion_violations", d.expansion_violations}};
}

}  // namespace priomet
