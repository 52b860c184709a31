#include <algorithm>
#include <cmath>

#include "priomet/error.hpp"
#include "priomet/math.hpp"
#include "priomet/routing.hpp"

namespace priomet {

namespace detail {

// Builds tables and labels for the tree given by `members` (sorted) and their parents (global ids).
TreeRouting build_rooted_routing(const WeightedGraph& g, std::vector<Vertex> members, std::vector<Vertex> parent,
                                 Vertex root, const PriorityRanking& r) {
    const std::size_t k = members.size();
    TreeRouting tr;
    tr.root = root;
    tr.members = std::move(members);
    tr.parent = std::move(parent);
    tr.table.resize(k);
    tr.labels.resize(k);
    tr.weight.resize(k);
    tr.subtree_weight.resize(k);
    tr.heavy.assign(k, 0);
    tr.by_dfs.resize(k);

    auto loc = [&](Vertex v) {
        auto x = tr.local(v);
        if (!x) throw Error("tree parent lies outside the member set");
        return *x;
    };
    std::vector<std::vector<std::size_t>> children(k);
    std::size_t root_loc = loc(root);
    for (std::size_t x = 0; x < k; ++x) {
        tr.weight[x] = tree_routing_weight(r.rank_of(tr.members[x]));
        if (x != root_loc) children[loc(tr.parent[x])].push_back(x);  // ascending id order
    }

    // Post-order for subtree weights.
    std::vector<std::size_t> order{root_loc};
    for (std::size_t q = 0; q < order.size(); ++q)
        for (std::size_t c : children[order[q]]) order.push_back(c);
    if (order.size() != k) throw NotATreeError("parent pointers do not form a tree");
    for (std::size_t q = k; q-- > 0;) {
        std::size_t x = order[q];
        double s = tr.weight[x];
        for (std::size_t c : children[x]) s += tr.subtree_weight[c];
        tr.subtree_weight[x] = s;
    }
    std::vector<std::int64_t> heavy_child(k, -1);
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t c : children[x])
            if (heavy_child[x] < 0 || tr.subtree_weight[c] > tr.subtree_weight[heavy_child[x]]) heavy_child[x] = c;
        if (heavy_child[x] >= 0) tr.heavy[heavy_child[x]] = 1;
    }

    // DFS: light children in id order, heavy child last.
    std::uint32_t counter = 0;
    struct Frame {
        std::size_t x;
        std::size_t next;
    };
    auto ordered = [&](std::size_t x) {
        std::vector<std::size_t> cs;
        for (std::size_t c : children[x])
            if (std::int64_t(c) != heavy_child[x]) cs.push_back(c);
        if (heavy_child[x] >= 0) cs.push_back(std::size_t(heavy_child[x]));
        return cs;
    };
    std::vector<std::vector<std::size_t>> kids(k);
    for (std::size_t x = 0; x < k; ++x) kids[x] = ordered(x);
    std::vector<Frame> stack{{root_loc, 0}};
    tr.table[root_loc].dfs = counter++;
    tr.labels[root_loc].dfs = tr.table[root_loc].dfs;
    while (!stack.empty()) {
        Frame& fr = stack.back();
        if (fr.next < kids[fr.x].size()) {
            std::size_t c = kids[fr.x][fr.next++];
            tr.table[c].dfs = counter++;
            tr.labels[c].dfs = tr.table[c].dfs;
            tr.labels[c].ports = tr.labels[fr.x].ports;
            tr.table[c].light_depth = tr.table[fr.x].light_depth;
            if (!tr.heavy[c]) {
                tr.labels[c].ports.push_back(static_cast<std::uint32_t>(*g.port_of(tr.members[fr.x], tr.members[c])));
                ++tr.table[c].light_depth;
            }
            stack.push_back({c, 0});
        } else {
            tr.table[fr.x].f = counter - 1;
            stack.pop_back();
        }
    }
    for (std::size_t x = 0; x < k; ++x) {
        TreeRoutingEntry& e = tr.table[x];
        tr.by_dfs[e.dfs] = tr.members[x];
        if (x != root_loc) {
            auto p = g.port_of(tr.members[x], tr.parent[x]);
            if (!p) throw InvalidArgument("tree edge missing from the graph");
            e.port_parent = static_cast<std::int32_t>(*p);
        }
        if (heavy_child[x] >= 0) {
            e.h = tr.table[heavy_child[x]].dfs;
            e.port_heavy = static_cast<std::int32_t>(*g.port_of(tr.members[x], tr.members[heavy_child[x]]));
        } else {
            e.h = e.f + 1;
        }
    }
    return tr;
}

}  // namespace detail

std::optional<std::size_t> TreeRouting::local(Vertex v) const {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
}

const TreeRoutingEntry& TreeRouting::entry(Vertex v) const {
    auto x = local(v);
    if (!x) throw RoutingError("vertex " + std::to_string(v) + " is not in this tree");
    return table[*x];
}

const TreeRoutingLabel& TreeRouting::label(Vertex v) const {
    auto x = local(v);
    if (!x) throw RoutingError("vertex " + std::to_string(v) + " is not in this tree");
    return labels[*x];
}

double tree_routing_weight(Rank j) {
    if (j == 0) throw InvalidArgument("ranks start at 1");
    const unsigned i = j == 1 ? 0 : ceil_log2(j);
    return 1.0 / (std::ldexp(1.0, int(i)) * double(i + 1) * double(i + 1));
}

double tree_label_bound(Rank j) {
    if (j <= 1) return 3.0;
    const double lj = std::log2(double(j));
    return lj + 2.0 * std::log2(lj + 2.0) + 2.0;
}

TreeRouting build_tree_routing(const WeightedGraph& tree, const PriorityRanking& r, Vertex root) {
    const std::size_t n = tree.size();
    if (!tree.is_tree()) throw NotATreeError("tree routing needs a tree");
    if (r.size() != n) throw InvalidArgument("ranking size does not match the graph");
    if (root >= n) throw InvalidArgument("root out of range");
    std::vector<Vertex> members(n), parent(n);
    std::vector<char> seen(n, 0);
    for (std::size_t v = 0; v < n; ++v) members[v] = Vertex(v);
    std::vector<Vertex> queue{root};
    parent[root] = root;
    seen[root] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (const Arc& a : tree.neighbors(queue[q]))
            if (!seen[a.to]) {
                seen[a.to] = 1;
                parent[a.to] = queue[q];
                queue.push_back(a.to);
            }
    return detail::build_rooted_routing(tree, std::move(members), std::move(parent), root, r);
}

std::optional<std::uint32_t> tree_next_port(const TreeRoutingEntry& e, const TreeRoutingLabel& label,
                                            std::size_t degree) {
    std::int64_t port;
    if (label.dfs == e.dfs) return std::nullopt;
    if (label.dfs < e.dfs || label.dfs > e.f) {
        port = e.port_parent;
    } else if (label.dfs >= e.h) {
        port = e.port_heavy;
    } else {
        if (e.light_depth >= label.ports.size()) throw RoutingError("label has no port for this light edge");
        port = label.ports[e.light_depth];
    }
    if (port < 0 || std::size_t(port) >= degree) throw RoutingError("port index out of range");
    return static_cast<std::uint32_t>(port);
}

RouteResult route_tree(const WeightedGraph& g, const TreeRouting& tr, Vertex source, const TreeRoutingLabel& label) {
    RouteResult res;
    res.tree_root = tr.root;
    res.header_words = label.size_words();
    Vertex w = source;
    res.hops.push_back(w);
    while (auto port = tree_next_port(tr.entry(w), label, g.degree(w))) {
        const Arc& a = g.arc_at(w, *port);
        res.length += a.w;
        w = a.to;
        res.hops.push_back(w);
        if (res.hops.size() > tr.members.size() + 1) throw RoutingError("routing loop detected");
    }
    return res;
}

}  // namespace priomet
