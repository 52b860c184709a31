#include <algorithm>
#include <cmath>

#include "priomet/error.hpp"
#include "priomet/labeling.hpp"
#include "priomet/math.hpp"

namespace priomet {

namespace {

struct Component {
    std::vector<Vertex> members;  // BFS order from members[0]
    std::vector<Vertex> parent;   // parallel to members; parent in the BFS tree (self for the root)
};

// Components of the alive vertices, each in BFS order.
std::vector<Component> components(const WeightedGraph& g, const std::vector<char>& alive) {
    const std::size_t n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<Component> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (!alive[s] || seen[s]) continue;
        Component c;
        c.members.push_back(Vertex(s));
        c.parent.push_back(Vertex(s));
        seen[s] = 1;
        for (std::size_t k = 0; k < c.members.size(); ++k) {
            Vertex x = c.members[k];
            for (const Arc& a : g.neighbors(x)) {
                if (!alive[a.to] || seen[a.to]) continue;
                seen[a.to] = 1;
                c.members.push_back(a.to);
                c.parent.push_back(x);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Vertex minimizing the largest component weight left after its removal (smallest id on ties).
Vertex weighted_centroid(const Component& c, const std::vector<double>& weight, std::vector<double>& sub,
                         std::vector<double>& worst) {
    const std::size_t s = c.members.size();
    double total = 0.0;
    for (Vertex x : c.members) {
        sub[x] = weight[x];
        worst[x] = 0.0;
        total += weight[x];
    }
    for (std::size_t k = s; k-- > 1;) {
        Vertex x = c.members[k], p = c.parent[k];
        sub[p] += sub[x];
        worst[p] = std::max(worst[p], sub[x]);
    }
    Vertex best = c.members[0];
    double best_val = kInf;
    for (Vertex x : c.members) {
        double val = std::max(worst[x], total - sub[x]);
        if (val < best_val || (val == best_val && x < best)) {
            best = x;
            best_val = val;
        }
    }
    return best;
}

}  // namespace

double separator_query(const SeparatorLabel& a, const SeparatorLabel& b) {
    if (a.owner == b.owner) return 0.0;
    double best = kInf;
    auto i = a.entries.begin(), j = b.entries.begin();
    while (i != a.entries.end() && j != b.entries.end()) {
        if (i->separator < j->separator) {
            ++i;
        } else if (j->separator < i->separator) {
            ++j;
        } else {
            best = std::min(best, i->dist + j->dist);
            ++i;
            ++j;
        }
    }
    return best;
}

double TreeExactLabels::query(Vertex u, Vertex v) const { return separator_query(labels.at(u), labels.at(v)); }

TreeExactLabels build_tree_exact_labels(const WeightedGraph& g, const PriorityRanking& r) {
    const std::size_t n = g.size();
    if (!g.is_tree()) throw NotATreeError("tree-exact labels need a tree");
    if (r.size() != n) throw InvalidArgument("ranking size does not match the graph");

    TreeExactLabels out;
    out.labels.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.labels[v].owner = Vertex(v);

    std::vector<char> alive(n, 1);
    std::vector<double> weight(n, 0.0), sub(n), worst(n), dist(n);
    std::vector<std::size_t> block(n);
    for (std::size_t v = 0; v < n; ++v) block[v] = double_exp_block(r.rank_of(Vertex(v)));
    const std::size_t phases = double_exp_block(n) + 1;

    for (std::size_t i = 0; i < phases; ++i) {
        TreeExactLabels::Phase ph;
        ph.index = static_cast<unsigned>(i);
        std::size_t remaining = 0;
        for (std::size_t v = 0; v < n; ++v) {
            weight[v] = alive[v] && block[v] == i ? 1.0 : 0.0;
            ph.block_size += block[v] == i;
            remaining += weight[v] > 0.0;  // block members removed in earlier phases are already done
        }
        const unsigned max_levels = i >= 31 ? ~0u : (1u << i) + 1;
        while (remaining > 0 && ph.levels < max_levels) {
            ++ph.levels;
            std::vector<Vertex> chosen;
            for (const Component& c : components(g, alive)) {
                bool any = false;
                for (Vertex x : c.members) any = any || weight[x] > 0.0;
                if (!any) continue;
                const Vertex sep = weighted_centroid(c, weight, sub, worst);
                // Distances from the separator inside its component (a subtree, so they are tree distances).
                dist[sep] = 0.0;
                std::vector<Vertex> queue{sep};
                std::vector<Vertex> from{sep};
                for (std::size_t k = 0; k < queue.size(); ++k) {
                    Vertex x = queue[k];
                    for (const Arc& a : g.neighbors(x)) {
                        if (!alive[a.to] || a.to == from[k]) continue;
                        dist[a.to] = dist[x] + a.w;
                        queue.push_back(a.to);
                        from.push_back(x);
                    }
                }
                for (Vertex x : queue) out.labels[x].entries.push_back({sep, dist[x], ph.index});
                chosen.push_back(sep);
            }
            for (Vertex s : chosen) {
                alive[s] = 0;
                if (weight[s] > 0.0) --remaining;
                weight[s] = 0.0;
            }
        }
        ph.remaining_after = remaining;
        out.phases.push_back(ph);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (alive[v]) throw Error("separator hierarchy left a vertex unassigned");
        auto& e = out.labels[v].entries;
        std::sort(e.begin(), e.end(), [](const SeparatorEntry& a, const SeparatorEntry& b) {
            return a.separator < b.separator;
        });
    }
    return out;
}

nlohmann::json to_json(const SeparatorLabel& l) {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& x : l.entries) e.push_back({x.separator, x.dist});
    return {{"owner", l.owner}, {"entries", std::move(e)}, {"size_words", l.size_words()}};
}

}  // namespace priomet
