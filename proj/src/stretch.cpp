#include "priomet/stretch.hpp"

#include <algorithm>
#include <cmath>

#include "priomet/math.hpp"

namespace priomet {

PairTable evaluate_pairs(std::size_t n, const PairEstimate& fn) {
    PairTable out(n);
    const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t u = 0; u < rows; ++u) {
        for (std::size_t v = std::size_t(u) + 1; v < n; ++v) {
            out.at(static_cast<Vertex>(u), static_cast<Vertex>(v)) =
                fn(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    }
    return out;
}

PairTable evaluate_pairs_serial(std::size_t n, const PairEstimate& fn) {
    PairTable out(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            out.at(static_cast<Vertex>(u), static_cast<Vertex>(v)) =
                fn(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return out;
}

std::size_t rank_bucket(Rank j) { return floor_log2(j); }

StretchReport summarize_ratios(const PairTable& ratios, const PriorityRanking& ranking) {
    const std::size_t n = ratios.n();
    StretchReport rep;
    if (n < 2) return rep;
    const std::size_t nb = rank_bucket(static_cast<Rank>(n)) + 1;
    rep.buckets.resize(nb);
    std::vector<double> sums(nb, 0.0);
    for (std::size_t k = 0; k < nb; ++k) {
        rep.buckets[k].rank_lo = Rank(1) << k;
        rep.buckets[k].rank_hi = static_cast<Rank>(std::min<std::size_t>(n, (std::size_t(1) << (k + 1)) - 1));
        rep.buckets[k].min_stretch = kInf;
    }
    rep.global_min = kInf;
    // Walk pairs in rank order so the summation order does not depend on vertex ids.
    for (Rank j = 1; j <= n; ++j) {
        Vertex a = ranking.vertex_of(j);
        auto& b = rep.buckets[rank_bucket(j)];
        for (Rank i = j + 1; i <= n; ++i) {
            double r = ratios(a, ranking.vertex_of(i));
            ++b.pairs;
            sums[rank_bucket(j)] += r;
            b.max_stretch = std::max(b.max_stretch, r);
            b.min_stretch = std::min(b.min_stretch, r);
            rep.global_max = std::max(rep.global_max, r);
            rep.global_min = std::min(rep.global_min, r);
            ++rep.pairs;
        }
    }
    for (std::size_t k = 0; k < nb; ++k) {
        auto& b = rep.buckets[k];
        if (b.pairs) {
            b.mean_stretch = sums[k] / double(b.pairs);
        } else {
            b.min_stretch = 0.0;
        }
    }
    // The last rank has no lower-priority partner; drop trailing empty buckets.
    while (!rep.buckets.empty() && rep.buckets.back().pairs == 0) rep.buckets.pop_back();
    return rep;
}

StretchReport measure_prioritized_stretch(const PairEstimate& estimate, const MetricSpace& truth,
                                          const PriorityRanking& ranking, Contract contract) {
    const std::size_t n = truth.size();
    PairTable est = evaluate_pairs(n, estimate);
    PairTable ratio(n);
    std::size_t violations = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            double e = est(Vertex(u), Vertex(v));
            double d = truth(Vertex(u), Vertex(v));
            double r = d > 0 ? e / d : (e == 0 ? 1.0 : kInf);
            ratio.at(Vertex(u), Vertex(v)) = r;
            if (contract == Contract::NonContractive && r < 1.0 - kRelTol) ++violations;
            if (contract == Contract::NonExpansive && r > 1.0 + kRelTol) ++violations;
        }
    }
    StretchReport rep = summarize_ratios(ratio, ranking);
    rep.violations = violations;
    return rep;
}

BoundCheck check_rank_bound(const PairTable& ratios, const PriorityRanking& ranking,
                            const RankBound& bound) {
    BoundCheck bc;
    const std::size_t n = ratios.n();
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            Rank j = std::min(ranking.rank_of(Vertex(u)), ranking.rank_of(Vertex(v)));
            double b = bound(j);
            double r = ratios(Vertex(u), Vertex(v));
            ++bc.checked;
            if (!approx_le(r, b)) ++bc.failed;
            bc.worst_ratio_to_bound = std::max(bc.worst_ratio_to_bound, r / b);
        }
    }
    return bc;
}

}  // namespace priomet
