#include <algorithm>
#include <cmath>

#include "priomet/error.hpp"
#include "priomet/labeling.hpp"
#include "priomet/oracle.hpp"
#include "priomet/routing.hpp"

namespace priomet {

namespace detail {
TreeRouting build_rooted_routing(const WeightedGraph& g, std::vector<Vertex> members, std::vector<Vertex> parent,
                                 Vertex root, const PriorityRanking& r);
}

std::size_t GeneralRoutingLabel::size_words() const {
    std::size_t w = 0;
    for (const auto& it : items) w += 1 + it.label.size_words();
    return w;
}

double general_routing_stretch_bound(Rank j, std::size_t n, unsigned t) {
    return 4.0 * double(t - prioritized_start_level(j, n, t)) - 3.0;
}

const TreeRouting& GeneralRoutingScheme::tree(Vertex z) const {
    if (z >= tree_index_.size() || tree_index_[z] < 0) throw RoutingError("no routing tree rooted at this vertex");
    return trees_[tree_index_[z]];
}

std::size_t GeneralRoutingScheme::table_words(Vertex v) const {
    return tz_.bunch(v).size() * (1 + TreeRoutingEntry::kWords);
}

RouteResult GeneralRoutingScheme::route(const WeightedGraph& g, Vertex source, const GeneralRoutingLabel& target) const {
    if (source >= size() || target.owner >= size()) throw InvalidArgument("route endpoint out of range");
    RouteResult res;
    if (source == target.owner) {
        res.hops.push_back(source);
        return res;
    }
    const GeneralRoutingLabel::Item* chosen = nullptr;
    for (const auto& it : target.items) {
        if (tz_.find(source, it.tree)) {
            chosen = &it;
            break;
        }
    }
    if (!chosen) throw RoutingError("no label tree is in the source's bunch");
    const TreeRouting& tr = tree(chosen->tree);
    // Each hop reads the table that vertex keeps for T_z (keyed by z in its bunch).
    Vertex w = source;
    res.hops.push_back(w);
    res.tree_root = chosen->tree;
    res.level = chosen->level;
    res.header_words = 1 + chosen->label.size_words();
    while (true) {
        if (!tz_.find(w, chosen->tree)) throw RoutingError("message left the cluster of its tree");
        auto port = tree_next_port(tr.entry(w), chosen->label, g.degree(w));
        if (!port) break;
        const Arc& a = g.arc_at(w, *port);
        res.length += a.w;
        w = a.to;
        res.hops.push_back(w);
        if (res.hops.size() > tr.members.size() + 1) throw RoutingError("routing loop detected");
    }
    if (w != target.owner) throw RoutingError("message delivered to the wrong vertex");
    return res;
}

double GeneralRoutingScheme::invariant_ratio(const MetricSpace& d, Vertex u, Vertex v) const {
    if (u == v) return 0.0;
    const unsigned i = start_[v];
    double worst = 0.0;
    for (unsigned k = i; k < t(); ++k) {
        const Pivot& p = tz_.pivot(v, k);
        if (k == i) {
            if (p.dist > 0.0) return kInf;  // v itself is in A_{i(v)}
        } else {
            worst = std::max(worst, p.dist / (2.0 * double(k - i) * d(u, v)));
        }
        if (tz_.find(u, p.id)) break;
    }
    return worst;
}

GeneralRoutingScheme build_general_routing(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
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

    GeneralRoutingScheme s;
    unsigned a = 0;
    for (; a < kLabelRetries; ++a) {
        Rng rng(Rng::derive(seed, a));
        TzStructure tz(d, sample_prioritized_levels(r, t, rng), sp);
        if (!label_events_hold(tz, r)) continue;
        s.tz_ = std::move(tz);
        break;
    }
    if (a == kLabelRetries) throw RetryExhausted("routing build failed its size events in every attempt");
    s.attempts_ = a + 1;

    // Clusters C(z) = {x : z in B(x)}; x's parent in T_z is its next hop towards z.
    std::vector<std::vector<Vertex>> cluster(n);
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& e : s.tz_.bunch(Vertex(x))) cluster[e.id].push_back(Vertex(x));
    s.tree_index_.assign(n, -1);
    for (std::size_t z = 0; z < n; ++z) {
        if (cluster[z].empty()) continue;
        std::vector<Vertex> parent(cluster[z].size());
        for (std::size_t k = 0; k < cluster[z].size(); ++k) {
            const Vertex x = cluster[z][k];
            parent[k] = x == z ? x : s.tz_.find(x, Vertex(z))->next_hop;
        }
        s.tree_index_[z] = static_cast<std::int32_t>(s.trees_.size());
        s.trees_.push_back(detail::build_rooted_routing(g, cluster[z], std::move(parent), Vertex(z), r));
    }

    s.start_.resize(n);
    s.labels_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        s.start_[v] = prioritized_start_level(r.rank_of(Vertex(v)), n, t);
        GeneralRoutingLabel& l = s.labels_[v];
        l.owner = Vertex(v);
        for (unsigned k = s.start_[v]; k < t; ++k) {
            const Vertex z = s.tz_.pivot(Vertex(v), k).id;
            l.items.push_back({k, z, s.tree(z).label(Vertex(v))});
        }
    }
    return s;
}

}  // namespace priomet
