#include "priomet/ultrametric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "priomet/error.hpp"
#include "priomet/math.hpp"

namespace priomet {

PriorityPermutation sample_priority_permutation(const PriorityRanking& r, std::uint64_t seed) {
    const std::size_t n = r.size();
    PriorityPermutation pi;
    pi.order.reserve(n);
    pi.position.assign(n, 0);
    pi.block.assign(n, 0);
    Rng rng(seed);
    std::size_t begin = 1;
    for (std::size_t b = 0; begin <= n; ++b) {
        std::size_t end = std::min<std::uint64_t>(n, double_exp_block_end(b));
        std::size_t first = pi.order.size();
        for (std::size_t j = begin; j <= end; ++j) {
            Vertex v = r.vertex_of(Rank(j));
            pi.order.push_back(v);
            pi.block[v] = static_cast<std::uint32_t>(b);
        }
        rng.shuffle(std::span<Vertex>(pi.order.data() + first, pi.order.size() - first));
        begin = end + 1;
    }
    for (std::size_t p = 0; p < n; ++p) pi.position[pi.order[p]] = static_cast<std::uint32_t>(p + 1);
    return pi;
}

Ultrametric::Ultrametric(std::vector<Node> nodes, std::size_t points) : nodes_(std::move(nodes)), leaf_(points, -1) {
    depth_.assign(nodes_.size(), 0);
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const auto& nd = nodes_[k];
        if (nd.parent >= 0) depth_[k] = depth_[nd.parent] + 1;  // parents precede children
        if (nd.point >= 0) leaf_.at(nd.point) = static_cast<int>(k);
    }
    for (int l : leaf_)
        if (l < 0) throw InvalidArgument("ultrametric is missing a leaf");
}

std::size_t Ultrametric::height() const {
    int h = 0;
    for (int d : depth_) h = std::max(h, d);
    return static_cast<std::size_t>(h);
}

double Ultrametric::distance(Vertex u, Vertex v) const {
    if (u >= leaf_.size() || v >= leaf_.size()) throw InvalidArgument("unknown leaf id");
    int a = leaf_[u], b = leaf_[v];
    while (a != b) {
        if (depth_[a] >= depth_[b]) {
            a = nodes_[a].parent;
        } else {
            b = nodes_[b].parent;
        }
    }
    return nodes_[a].label;
}

std::vector<double> Ultrametric::distance_matrix() const {
    const std::size_t n = points();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) d[u * n + v] = d[v * n + u] = distance(Vertex(u), Vertex(v));
    return d;
}

nlohmann::json Ultrametric::to_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : nodes_) {
        nodes.push_back({{"label", nd.label}, {"parent", nd.parent}, {"level", nd.level}, {"point", nd.point}});
    }
    return {{"points", points()}, {"nodes", std::move(nodes)}};
}

namespace {

std::size_t pair_index(std::size_t n, std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

struct RawNode {
    double label;
    int level;
    std::vector<int> children;
    int point;
};

Ultrametric build_unchecked(const MetricSpace& m, const PriorityRanking& r, std::uint64_t seed, FrtTrace* trace) {
    const std::size_t n = m.size();
    if (n == 0) throw InvalidArgument("empty metric");
    if (r.size() != n) throw InvalidArgument("ranking size does not match the metric");
    if (n == 1) {
        return Ultrametric({Ultrametric::Node{0.0, -1, 0, {}, 0}}, 1);
    }

    const double scale = m.min_positive();
    const double diam = m.diameter() / scale;
    int delta = std::max(0, static_cast<int>(std::ceil(std::log2(diam))));
    while (std::ldexp(1.0, delta) < diam) ++delta;
    while (delta > 0 && std::ldexp(1.0, delta - 1) >= diam) --delta;

    PriorityPermutation pi = sample_priority_permutation(r, Rng::derive(seed, 0));
    Rng rng(Rng::derive(seed, 1));
    const double beta = std::exp2(rng.uniform01());  // density 1 / (x ln 2) on [1, 2)

    std::vector<RawNode> raw;
    raw.push_back({std::ldexp(scale, delta), delta, {}, -1});
    std::vector<std::uint32_t> cluster(n, 0);
    std::vector<int> node_of{0};             // raw node of each cluster id
    std::vector<std::size_t> csize{n};

    if (trace) {
        trace->scale = scale;
        trace->delta = delta;
        trace->beta = beta;
        trace->pi = pi;
        trace->levels.clear();
        trace->levels.push_back({delta, cluster});
        trace->cut_level.assign(n * (n - 1) / 2, 0);
        trace->cutter.assign(n * (n - 1) / 2, 0);
    }

    std::vector<Vertex> center(n);
    for (int i = delta - 1;; --i) {
        bool any = false;
        for (auto s : csize) any = any || s > 1;
        if (!any) break;
        const double beta_i = std::ldexp(beta, i - 2);

        for (std::size_t x = 0; x < n; ++x) {
            center[x] = Vertex(x);
            if (csize[cluster[x]] <= 1) continue;
            auto row = m.row(Vertex(x));
            for (Vertex c : pi.order) {
                if (row[c] / scale <= beta_i) {
                    center[x] = c;
                    break;
                }
            }
        }

        // New cluster ids ordered by (parent cluster, center position); singletons carry over.
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
        for (std::size_t x = 0; x < n; ++x) {
            std::uint32_t key2 = csize[cluster[x]] <= 1 ? 0 : pi.position[center[x]];
            ids.emplace(std::pair{cluster[x], key2}, 0);
        }
        std::uint32_t next = 0;
        for (auto& [k, id] : ids) id = next++;
        std::vector<std::uint32_t> fresh(n);
        std::vector<std::size_t> fresh_size(next, 0);
        for (std::size_t x = 0; x < n; ++x) {
            std::uint32_t key2 = csize[cluster[x]] <= 1 ? 0 : pi.position[center[x]];
            fresh[x] = ids.at({cluster[x], key2});
            ++fresh_size[fresh[x]];
        }

        std::vector<int> fresh_node(next, -1);
        for (auto& [k, id] : ids) {
            int parent = node_of[k.first];
            if (csize[k.first] <= 1) {
                fresh_node[id] = parent;  // already a leaf
                continue;
            }
            int nid = static_cast<int>(raw.size());
            raw.push_back({std::ldexp(scale, i), i, {}, -1});
            raw[parent].children.push_back(nid);
            fresh_node[id] = nid;
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (csize[cluster[x]] > 1 && fresh_size[fresh[x]] == 1) {
                RawNode& leaf = raw[fresh_node[fresh[x]]];
                leaf.label = 0.0;
                leaf.point = static_cast<int>(x);
            }
        }

        if (trace) {
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v) {
                    if (cluster[u] != cluster[v] || fresh[u] == fresh[v]) continue;
                    std::size_t k = pair_index(n, u, v);
                    trace->cut_level[k] = i;
                    trace->cutter[k] = pi.position[center[u]] < pi.position[center[v]] ? center[u] : center[v];
                }
            trace->levels.push_back({i, fresh});
        }
        cluster = std::move(fresh);
        node_of = std::move(fresh_node);
        csize = std::move(fresh_size);
    }

    // Splice out single-child chains; emit parents before children.
    std::vector<Ultrametric::Node> out;
    std::vector<std::pair<int, int>> stack{{0, -1}};
    while (!stack.empty()) {
        auto [id, parent] = stack.back();
        stack.pop_back();
        while (raw[id].point < 0 && raw[id].children.size() == 1) id = raw[id].children[0];
        int k = static_cast<int>(out.size());
        out.push_back({raw[id].label, parent, raw[id].level, {}, raw[id].point});
        if (parent >= 0) out[parent].children.push_back(k);
        for (auto it = raw[id].children.rbegin(); it != raw[id].children.rend(); ++it) stack.push_back({*it, k});
    }
    return Ultrametric(std::move(out), n);
}

template <bool Parallel>
ExpectedDistortion estimate(const MetricSpace& m, const PriorityRanking& r, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidArgument("samples must be >= 1");
    if (auto err = m.validate(); !err.empty()) throw InvalidArgument("not a metric: " + err);
    const std::size_t n = m.size();
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<double> sum(pairs, 0.0);
    double min_ratio = kInf;

    constexpr std::size_t kChunk = 32;
    std::vector<std::vector<double>> ratio(kChunk, std::vector<double>(pairs));
    for (std::size_t base = 0; base < samples; base += kChunk) {
        const std::int64_t count = static_cast<std::int64_t>(std::min(kChunk, samples - base));
        auto one = [&](std::int64_t c) {
            Ultrametric t = build_unchecked(m, r, frt_sample_seed(seed, base + std::size_t(c)), nullptr);
            auto& out = ratio[std::size_t(c)];
            for (std::size_t u = 0, k = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v, ++k) out[k] = t.distance(Vertex(u), Vertex(v)) / m(Vertex(u), Vertex(v));
        };
        if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
            for (std::int64_t c = 0; c < count; ++c) one(c);
        } else {
            for (std::int64_t c = 0; c < count; ++c) one(c);
        }
        for (std::int64_t c = 0; c < count; ++c)
            for (std::size_t k = 0; k < pairs; ++k) {
                sum[k] += ratio[c][k];
                min_ratio = std::min(min_ratio, ratio[c][k]);
            }
    }
    ExpectedDistortion out;
    out.mean_ratio = PairTable(n);
    for (std::size_t k = 0; k < pairs; ++k) out.mean_ratio.values()[k] = sum[k] / double(samples);
    out.min_ratio = min_ratio;
    out.report = summarize_ratios(out.mean_ratio, r);
    out.report.violations = 0;
    for (std::size_t k = 0; k < pairs; ++k)
        if (out.mean_ratio.values()[k] < 1.0 - kRelTol) ++out.report.violations;
    return out;
}

}  // namespace

Ultrametric build_frt_tree(const MetricSpace& m, const PriorityRanking& r, std::uint64_t seed, FrtTrace* trace) {
    if (auto err = m.validate(); !err.empty()) throw InvalidArgument("not a metric: " + err);
    return build_unchecked(m, r, seed, trace);
}

ExpectedDistortion estimate_expected_distortion(const MetricSpace& m, const PriorityRanking& r, std::size_t samples,
                                                std::uint64_t seed) {
    return estimate<true>(m, r, samples, seed);
}

ExpectedDistortion estimate_expected_distortion_serial(const MetricSpace& m, const PriorityRanking& r,
                                                       std::size_t samples, std::uint64_t seed) {
    return estimate<false>(m, r, samples, seed);
}

}  // namespace priomet
