#include "priomet/labeling.hpp"

#include <algorithm>
#include <cmath>

#include "priomet/error.hpp"
#include "priomet/math.hpp"

namespace priomet {

namespace {

constexpr std::uint64_t kLabelStream = 0x6c6162656c000000ULL;

VertexLabel make_label(const TzStructure& tz, Vertex v, Rank rank, unsigned start, std::uint64_t id) {
    VertexLabel l;
    l.owner = v;
    l.rank = rank;
    l.start_level = start;
    l.build_id = id;
    auto b = tz.bunch(v);
    l.bunch.assign(b.begin(), b.end());
    auto p = tz.pivots(v);
    l.pivots.assign(p.begin(), p.end());
    return l;
}

PrioritizedLabels labels_from_structure(const TzStructure& tz, const PriorityRanking& r, std::uint64_t seed,
                                        unsigned attempts, std::uint64_t id) {
    const std::size_t n = tz.size();
    PrioritizedLabels out;
    out.t = tz.t();
    out.seed = seed;
    out.attempts = attempts;
    out.top_level_size = tz.levels().count(tz.t() - 1);
    out.labels.reserve(n);
    out.lower_sizes.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        Rank j = r.rank_of(Vertex(v));
        out.labels.push_back(make_label(tz, Vertex(v), j, prioritized_start_level(j, n, tz.t()), id));
        out.lower_sizes[v] = tz.lower_bunch_size(Vertex(v));
    }
    return out;
}

// The query loop started at level 0 from the source-side label.
double source_query(const VertexLabel& src, const VertexLabel& other) {
    if (src.build_id != other.build_id) throw InvalidArgument("labels come from different builds");
    if (src.owner == other.owner) return 0.0;
    const unsigned t = static_cast<unsigned>(src.pivots.size());
    auto bunch_of = [&](Vertex x) -> std::span<const BunchEntry> {
        return x == src.owner ? std::span<const BunchEntry>(src.bunch) : std::span<const BunchEntry>(other.bunch);
    };
    auto pivot_of = [&](Vertex x, unsigned i) -> const Pivot& {
        return x == src.owner ? src.pivots[i] : other.pivots[i];
    };
    return tz_query_loop(src.owner, other.owner, 0, t, bunch_of, pivot_of).estimate;
}

std::uint64_t block_start(std::size_t i, unsigned t) {
    // last rank of block i - 1, i.e. 2^{(i-1)t}, saturating
    const std::uint64_t e = std::uint64_t(i - 1) * t;
    return e >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << e);
}

}  // namespace

double label_query(const VertexLabel& a, const VertexLabel& b) {
    if (a.build_id != b.build_id) throw InvalidArgument("labels come from different builds");
    if (a.owner == b.owner) return 0.0;
    if (a.pivots.size() != b.pivots.size() || a.pivots.empty()) throw InvalidArgument("malformed label");
    const VertexLabel& hi = a.rank <= b.rank ? a : b;
    const VertexLabel& lo = a.rank <= b.rank ? b : a;
    const unsigned t = static_cast<unsigned>(hi.pivots.size());
    auto bunch_of = [&](Vertex x) -> std::span<const BunchEntry> {
        return x == hi.owner ? std::span<const BunchEntry>(hi.bunch) : std::span<const BunchEntry>(lo.bunch);
    };
    auto pivot_of = [&](Vertex x, unsigned i) -> const Pivot& { return x == hi.owner ? hi.pivots[i] : lo.pivots[i]; };
    return tz_query_loop(hi.owner, lo.owner, hi.start_level, t, bunch_of, pivot_of).estimate;
}

std::size_t PrioritizedLabels::lower_bunch_size(Vertex v) const { return lower_sizes.at(v); }

bool label_events_hold(const TzStructure& tz, const PriorityRanking& r) {
    const std::size_t n = tz.size();
    const unsigned t = tz.t();
    const double root = std::pow(double(n), 1.0 / double(t));
    if (double(tz.levels().count(t - 1)) > 8.0 * root) return false;
    for (Rank j = 2; j <= n; ++j) {
        if (double(tz.lower_bunch_size(r.vertex_of(j))) > 16.0 * root * std::log2(double(j))) return false;
    }
    return true;
}

PrioritizedLabels build_prioritized_labels(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
                                           std::uint64_t seed, const ShortestPaths* sp) {
    const std::size_t n = g.size();
    if (t == 0) throw InvalidArgument("t must be >= 1");
    if (n == 0) throw InvalidArgument("empty graph");
    if (r.size() != n) throw InvalidArgument("ranking size does not match the graph");
    ShortestPaths local;
    if (!sp) {
        local = all_pairs_shortest_paths(g);
        sp = &local;
    }
    const MetricSpace d = sp->metric();
    for (unsigned a = 0; a < kLabelRetries; ++a) {
        Rng rng(Rng::derive(seed, a));
        TzStructure tz(d, sample_prioritized_levels(r, t, rng), sp);
        if (!label_events_hold(tz, r)) continue;
        return labels_from_structure(tz, r, seed, a + 1, Rng::derive(seed, kLabelStream + a));
    }
    throw RetryExhausted("label size events failed in all " + std::to_string(kLabelRetries) + " attempts");
}

PrioritizedLabels labels_from_oracle(const PrioritizedOracle& o) {
    const std::size_t n = o.size();
    std::vector<Vertex> order(n);
    for (std::size_t v = 0; v < n; ++v) order[o.rank_of(Vertex(v)) - 1] = Vertex(v);
    return labels_from_structure(o.structure(), PriorityRanking(std::move(order)), o.seed(), o.attempts(),
                                 Rng::derive(o.seed(), kLabelStream + o.attempts() - 1));
}

PrioritizedLabels build_log_labels(const WeightedGraph& g, const PriorityRanking& r, std::uint64_t seed,
                                   const ShortestPaths* sp) {
    return build_prioritized_labels(g, r, std::max(1u, floor_log2(std::max<std::size_t>(g.size(), 1))), seed, sp);
}

double SourceLabels::size_bound(Rank j) const {
    return std::pow(double(sources.size()), 1.0 / double(t)) * (16.0 * std::log2(double(j)) + 8.0);
}

double SourceLabels::query(Vertex u, Vertex v) const {
    if (u >= labels.size() || v >= labels.size()) throw InvalidArgument("query vertex out of range");
    if (!recipient[u] || !recipient[v]) throw InvalidArgument("vertex holds no label of this block");
    // both endpoints sources: either side gives a valid estimate, take the better one so the query is symmetric
    if (is_source[u] && is_source[v])
        return std::min(source_query(labels[u], labels[v]), source_query(labels[v], labels[u]));
    if (is_source[u]) return source_query(labels[u], labels[v]);
    if (is_source[v]) return source_query(labels[v], labels[u]);
    throw InvalidArgument("source-restricted query needs an endpoint in the source set");
}

SourceLabels build_source_restricted_labels(const WeightedGraph& g, std::vector<Vertex> sources, unsigned t,
                                            const PriorityRanking& r, std::uint64_t seed, const ShortestPaths* sp,
                                            std::vector<Vertex> recipients) {
    const std::size_t n = g.size();
    if (t == 0) throw InvalidArgument("t must be >= 1");
    if (r.size() != n) throw InvalidArgument("ranking size does not match the graph");
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    if (sources.empty()) throw InvalidArgument("source set must be nonempty");
    if (sources.back() >= n) throw InvalidArgument("source id out of range");
    MetricSpace d = sp ? sp->metric() : exact_distances(g);

    SourceLabels out;
    out.t = t;
    out.seed = seed;
    out.sources = sources;
    out.is_source.assign(n, 0);
    for (Vertex s : sources) out.is_source[s] = 1;
    out.recipient.assign(n, recipients.empty() ? 1 : 0);
    for (Vertex v : recipients) out.recipient.at(v) = 1;
    for (Vertex s : sources) out.recipient[s] = 1;

    const double bound = 2.0 * double(t) - 1.0;
    for (unsigned a = 0; a < kLabelRetries; ++a) {
        Rng rng(Rng::derive(seed, a));
        TzStructure tz(d, sample_uniform_levels(n, sources, t, rng), nullptr);
        const std::uint64_t id = Rng::derive(seed, kLabelStream + a);
        out.labels.clear();
        bool ok = true;
        for (std::size_t v = 0; v < n; ++v) {
            out.labels.push_back(make_label(tz, Vertex(v), r.rank_of(Vertex(v)), 0, id));
            if (out.recipient[v] && double(tz.bunch(Vertex(v)).size()) > out.size_bound(r.rank_of(Vertex(v))))
                ok = false;
        }
        for (std::size_t k = 0; ok && k < sources.size(); ++k) {
            const Vertex s = sources[k];
            for (std::size_t v = 0; v < n && ok; ++v) {
                if (!out.recipient[v] || v == s) continue;
                const double est = source_query(out.labels[s], out.labels[v]);
                const double exact = d(s, Vertex(v));
                if (!approx_le(est, bound * exact) || !approx_le(exact, est)) ok = false;
            }
        }
        if (ok) {
            out.attempts = a + 1;
            return out;
        }
    }
    throw RetryExhausted("source-restricted labels failed their size/stretch checks in all " +
                         std::to_string(kLabelRetries) + " attempts");
}

std::size_t fully_prioritized_block(Rank j, unsigned t) {
    if (t == 0) throw InvalidArgument("t must be >= 1");
    std::size_t i = 1;
    while (std::uint64_t(i) * t < 63 && j > (std::uint64_t{1} << (i * t))) ++i;
    return i;
}

double FullyPrioritizedLabels::query(Vertex u, Vertex v) const {
    if (u == v) return 0.0;
    auto [a, b] = ranking.by_priority(u, v);
    const std::size_t i = block_of[a];
    if (i == 1) return base.query(a, b);
    return blocks[i]->query(a, b);
}

std::size_t FullyPrioritizedLabels::size_words(Vertex v) const {
    std::size_t w = base.labels[v].size_words();
    for (std::size_t i = 2; i <= block_of[v]; ++i) w += blocks[i]->labels[v].size_words();
    return w;
}

FullyPrioritizedLabels build_fully_prioritized_labels(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
                                                      std::uint64_t seed) {
    const std::size_t n = g.size();
    if (t == 0) throw InvalidArgument("t must be >= 1");
    if (r.size() != n) throw InvalidArgument("ranking size does not match the graph");
    const ShortestPaths sp = all_pairs_shortest_paths(g);

    FullyPrioritizedLabels out;
    out.t = t;
    out.ranking = r;
    out.base = build_log_labels(g, r, Rng::derive(seed, 0), &sp);
    out.m = fully_prioritized_block(Rank(n), t);
    out.block_of.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.block_of[v] = fully_prioritized_block(r.rank_of(Vertex(v)), t);
    out.blocks.resize(out.m + 1);
    for (std::size_t i = 2; i <= out.m; ++i) {
        const std::uint64_t lo = block_start(i, t);
        std::vector<Vertex> sources, recipients;
        for (Rank j = 1; j <= n; ++j) {
            if (j <= lo) continue;
            recipients.push_back(r.vertex_of(j));
            if (fully_prioritized_block(j, t) == i) sources.push_back(r.vertex_of(j));
        }
        out.blocks[i] =
            build_source_restricted_labels(g, std::move(sources), t, r, Rng::derive(seed, i), &sp, std::move(recipients));
    }
    return out;
}

nlohmann::json to_json(const VertexLabel& l) {
    nlohmann::json bunch = nlohmann::json::array(), pivots = nlohmann::json::array();
    for (const auto& e : l.bunch) bunch.push_back({e.id, e.dist});
    for (const auto& p : l.pivots) pivots.push_back({p.id, p.dist});
    return {{"owner", l.owner},           {"rank", l.rank},       {"start_level", l.start_level},
            {"entries", std::move(bunch)}, {"pivots", std::move(pivots)}, {"size_words", l.size_words()}};
}

}  // namespace priomet
