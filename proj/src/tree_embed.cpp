#include "priomet/tree_embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "priomet/error.hpp"
#include "priomet/math.hpp"

namespace priomet {

PriorityFunction PriorityFunction::table(std::vector<double> values, std::string name) {
    PriorityFunction f;
    f.name_ = std::move(name);
    f.values_ = std::move(values);
    return f;
}

PriorityFunction PriorityFunction::closed_form(std::function<double(Rank)> fn, std::string name, Tail tail) {
    PriorityFunction f;
    f.name_ = std::move(name);
    f.fn_ = std::move(fn);
    f.tail_ = std::move(tail);
    return f;
}

double PriorityFunction::operator()(Rank j) const {
    if (j == 0) throw InvalidArgument("priority functions are defined on ranks >= 1");
    if (values_) {
        if (j > values_->size()) throw InvalidArgument("rank outside the priority table");
        return (*values_)[j - 1];
    }
    return fn_(j);
}

std::vector<double> PriorityFunction::values(std::size_t n) const {
    std::vector<double> v(n);
    for (std::size_t j = 1; j <= n; ++j) v[j - 1] = (*this)(static_cast<Rank>(j));
    return v;
}

double alpha_eps_constant(double eps, std::size_t n) {
    if (!(eps > 0 && eps < 0.5)) throw InvalidArgument("eps must lie in (0, 1/2)");
    if (n < 2) n = 2;
    double s = 0.0;
    for (std::size_t j = 2; j <= n; ++j) s += 1.0 / (double(j) * std::pow(std::log2(double(j)), 1.0 + eps));
    // sum_{j > n} 1/(j log^{1+eps} j) <= integral_n^inf dx / (x log2(x)^{1+eps}) = ln 2 / (eps log2(n)^eps)
    double tail = std::log(2.0) / (eps * std::pow(std::log2(double(n)), eps));
    // 1/alpha(1) + c (s + tail) = 1, shaved so rounding cannot push the sum above 1.
    return (eps / (1.0 + eps)) / (s + tail) * (1.0 - 1e-12);
}

PriorityFunction alpha_preset_eps(double eps, std::size_t n) {
    const double c = alpha_eps_constant(eps, n);
    auto fn = [eps, c](Rank j) {
        if (j == 1) return 1.0 + eps;
        return double(j) * std::pow(std::log2(double(j)), 1.0 + eps) / c;
    };
    auto tail = [eps, c](std::size_t m) {
        if (m < 2) return kInf;
        return c * std::log(2.0) / (eps * std::pow(std::log2(double(m)), eps));
    };
    return PriorityFunction::closed_form(fn, "eps=" + std::to_string(eps), tail);
}

PriorityFunction alpha_geometric() {
    return PriorityFunction::closed_form([](Rank j) { return std::ldexp(1.0, int(std::min<Rank>(j, 1023))); },
                                         "2^j", [](std::size_t m) { return std::ldexp(1.0, -int(std::min<std::size_t>(m, 1074))); });
}

PriorityFunction alpha_linear() {
    return PriorityFunction::closed_form([](Rank j) { return double(j); }, "j");
}

PriorityFunction alpha_constant(double c) {
    return PriorityFunction::closed_form([c](Rank) { return c; }, "const");
}

PriorityFunction alpha_jlogloglog() {
    auto raw = [](double j) { return j * std::log2(j) * std::log2(std::log2(j)); };
    return PriorityFunction::closed_form([raw](Rank j) { return raw(double(std::max<Rank>(j, 3))); },
                                         "j log j loglog j");
}

PhiReport validate_phi(const PriorityFunction& alpha, std::size_t n) {
    PhiReport rep;
    rep.partial_sums.reserve(n);
    double s = 0.0, prev = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        double a = alpha(static_cast<Rank>(j));
        if (!(a > 0)) throw InvalidArgument("priority function must be positive");
        if (j > 1 && a < prev) rep.non_decreasing = false;
        prev = a;
        s += 1.0 / a;
        rep.partial_sums.push_back(s);
    }
    if (alpha.has_tail_bound()) {
        rep.tail = alpha.tail_bound(n);
        rep.tail_certified = true;
    }
    rep.total = s + rep.tail;
    rep.in_phi = rep.non_decreasing && rep.total <= 1.0;
    return rep;
}

DominatingTree::DominatingTree(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    WeightedGraph g(n, edges_);
    if (!g.is_tree()) throw NotATreeError("edge set is not a spanning tree");
    dist_.assign(n * n, 0.0);
    parent_.assign(n * n, 0);
    std::vector<Vertex> stack;
    for (std::size_t s = 0; s < n; ++s) {
        double* d = dist_.data() + s * n;
        Vertex* par = parent_.data() + s * n;
        std::vector<char> seen(n, 0);
        seen[s] = 1;
        par[s] = Vertex(s);
        stack.assign(1, Vertex(s));
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (const auto& a : g.neighbors(v)) {
                if (seen[a.to]) continue;
                seen[a.to] = 1;
                d[a.to] = d[v] + a.w;
                par[a.to] = v;
                stack.push_back(a.to);
            }
        }
    }
    // Sum order differs between roots; make the matrix exactly symmetric.
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) dist_[v * n + u] = dist_[u * n + v];
}

std::vector<Vertex> DominatingTree::path(Vertex u, Vertex v) const {
    std::vector<Vertex> p{u};
    while (p.back() != v) p.push_back(parent_[std::size_t(v) * n_ + p.back()]);
    return p;
}

DominatingTree prioritized_mst(const MetricSpace& m, const PriorityRanking& r, const PriorityFunction& alpha) {
    const std::size_t n = m.size();
    if (r.size() != n) throw InvalidArgument("ranking size does not match the metric");
    if (n == 0) throw InvalidArgument("empty metric");
    std::vector<double> a(n);
    for (std::size_t v = 0; v < n; ++v) a[v] = alpha(r.rank_of(Vertex(v)));
    auto weight = [&](Vertex u, Vertex v) {
        return (r.rank_of(u) < r.rank_of(v) ? a[u] : a[v]) * m(u, v);
    };
    using Key = std::tuple<double, Vertex, Vertex>;
    auto key = [&](Vertex u, Vertex v) { return Key{weight(u, v), std::min(u, v), std::max(u, v)}; };

    // Dense Prim; the total order on keys makes the minimum spanning tree unique.
    std::vector<char> in(n, 0);
    std::vector<Key> best(n, Key{kInf, 0, 0});
    std::vector<Vertex> link(n, 0);
    std::vector<Edge> edges;
    in[0] = 1;
    for (std::size_t v = 1; v < n; ++v) {
        best[v] = key(0, Vertex(v));
        link[v] = 0;
    }
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && (pick == n || best[v] < best[pick])) pick = v;
        in[pick] = 1;
        edges.push_back({link[pick], Vertex(pick), m(link[pick], Vertex(pick))});
        for (std::size_t v = 0; v < n; ++v) {
            if (in[v]) continue;
            Key k = key(Vertex(pick), Vertex(v));
            if (k < best[v]) {
                best[v] = k;
                link[v] = Vertex(pick);
            }
        }
    }
    return DominatingTree(n, std::move(edges));
}

DominatingTree embed_single_tree(const MetricSpace& m, const PriorityRanking& r, const PriorityFunction& alpha) {
    auto phi = validate_phi(alpha, m.size());
    if (!phi.in_phi) {
        throw InvalidArgument("priority function '" + alpha.name() + "' is not admissible (sum of 1/alpha = " +
                              std::to_string(phi.total) + ")");
    }
    return prioritized_mst(m, r, alpha);
}

CycleWitness cycle_lower_bound_check(const PriorityFunction& alpha, std::size_t max_terms) {
    CycleWitness w;
    double s = 0.0;
    for (std::size_t j = 1; j <= max_terms; ++j) {
        s += 1.0 / alpha(static_cast<Rank>(j));
        if (s > 1.0) {
            w.n_prime = j;
            break;
        }
    }
    if (w.n_prime == 0) {
        throw InvalidArgument("sum of 1/alpha stays <= 1 over " + std::to_string(max_terms) +
                              " terms; no lower-bound instance exists");
    }
    const std::size_t np = w.n_prime;

    // Smallest cycle length whose protected edge sets cover every edge with distinct positions.
    constexpr std::size_t kMaxCycle = 1u << 16;
    for (std::size_t n = std::max<std::size_t>(np + 1, 3); n <= kMaxCycle && w.n == 0; ++n) {
        std::vector<std::size_t> a(np);
        std::size_t cover = 0;
        for (std::size_t i = 0; i < np; ++i) {
            a[i] = static_cast<std::size_t>(std::floor(double(n) / (alpha(Rank(i + 1)) + 1.0)));
            cover += 2 * a[i];
        }
        if (cover < n) continue;
        std::vector<Vertex> pos(np);
        std::vector<char> used(n, 0);
        bool distinct = true;
        std::size_t p = 0;
        for (std::size_t i = 0; i < np && distinct; ++i) {
            if (i > 0) p += a[i - 1] + a[i];
            pos[i] = Vertex(p % n);
            if (used[pos[i]]) distinct = false;
            used[pos[i]] = 1;
        }
        if (!distinct) continue;
        w.n = n;
        w.a = std::move(a);
        w.positions = std::move(pos);
    }
    if (w.n == 0) throw InvalidArgument("no cycle length up to 65536 realizes the lower-bound placement");

    const std::size_t n = w.n;
    std::vector<Vertex> order = w.positions;
    std::vector<char> placed(n, 0);
    for (Vertex v : order) placed[v] = 1;
    for (std::size_t v = 0; v < n; ++v)
        if (!placed[v]) order.push_back(Vertex(v));
    w.ranking = PriorityRanking(order);

    std::vector<double> a(n);
    for (std::size_t j = 1; j <= n; ++j) a[j - 1] = alpha(Rank(j));

    w.all_violated = true;
    for (std::size_t k = 0; k < n; ++k) {
        // Removing edge {k, k+1} leaves the path k+1, k+2, ..., k.
        auto offset = [&](std::size_t v) { return (v + n - (k + 1) % n) % n; };
        CycleWitnessRow best;
        best.removed = {Vertex(k), Vertex((k + 1) % n), 1.0};
        double best_score = -1.0;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                double d = double(std::min(v - u, n - (v - u)));
                double td = std::abs(double(offset(u)) - double(offset(v)));
                Rank ru = w.ranking.rank_of(Vertex(u)), rv = w.ranking.rank_of(Vertex(v));
                Rank j = std::min(ru, rv);
                double score = (td / d) / a[j - 1];
                if (score > best_score) {
                    best_score = score;
                    best.rank = j;
                    best.x = ru < rv ? Vertex(u) : Vertex(v);
                    best.u = ru < rv ? Vertex(v) : Vertex(u);
                    best.tree_distance = td;
                    best.distance = d;
                    best.distortion = td / d;
                    best.alpha = a[j - 1];
                }
            }
        }
        best.violated = approx_le(best.alpha, best.distortion);
        w.all_violated = w.all_violated && best.violated;
        w.rows.push_back(best);
    }
    return w;
}

}  // namespace priomet
