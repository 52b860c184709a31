#include "priomet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "priomet/error.hpp"

namespace priomet {

namespace {

constexpr char kMagic[8] = {'P', 'R', 'I', 'O', 'O', 'R', 'C', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t x) {
    char b[4];
    for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((x >> (8 * k)) & 0xff);
    out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t x) {
    char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((x >> (8 * k)) & 0xff);
    out.write(b, 8);
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_bytes(std::istream& in, int count) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), count)) throw ParseError("truncated oracle file");
    std::uint64_t x = 0;
    for (int k = 0; k < count; ++k) x |= std::uint64_t(b[k]) << (8 * k);
    return x;
}

std::uint32_t get_u32(std::istream& in) { return static_cast<std::uint32_t>(get_bytes(in, 4)); }
std::uint64_t get_u64(std::istream& in) { return get_bytes(in, 8); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

// Vertex sequence from x to w following stored next hops.
void walk(const TzStructure& tz, Vertex x, Vertex w, std::vector<Vertex>& out) {
    out.push_back(x);
    std::size_t guard = 0;
    while (x != w) {
        const BunchEntry* e = tz.find(x, w);
        if (!e || ++guard > tz.size()) throw Error("path reconstruction left the cluster of the landmark");
        x = e->next_hop;
        out.push_back(x);
    }
}

}  // namespace

double oracle_size_budget(std::size_t n, unsigned t) {
    return 4.0 * t * std::pow(double(n), 1.0 + 1.0 / double(t));
}

double prioritized_stretch_bound(Rank j, std::size_t n, unsigned t) {
    return 2.0 * double(t - prioritized_start_level(j, n, t)) - 1.0;
}

PrioritizedOracle build_tz_prioritized(const WeightedGraph& g, const PriorityRanking& r, unsigned t,
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
    const double budget = oracle_size_budget(n, t);
    for (unsigned a = 0; a < kOracleRetries; ++a) {
        Rng rng(Rng::derive(seed, a));
        TzStructure tz(d, sample_prioritized_levels(r, t, rng), sp);
        if (double(tz.total_entries()) > budget) continue;
        PrioritizedOracle o;
        o.seed_ = seed;
        o.attempts_ = a + 1;
        o.rank_.resize(n);
        o.start_.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            o.rank_[v] = r.rank_of(Vertex(v));
            o.start_[v] = prioritized_start_level(o.rank_[v], n, t);
        }
        o.tz_ = std::move(tz);
        return o;
    }
    throw RetryExhausted("oracle bunch size exceeded 4 t n^{1+1/t} in all " + std::to_string(kOracleRetries) +
                         " attempts");
}

QueryResult PrioritizedOracle::query_traced(Vertex u, Vertex v) const {
    if (u >= size() || v >= size()) throw InvalidArgument("query vertex out of range");
    if (u == v) {
        QueryResult r;
        r.u = r.v = r.w = u;
        return r;
    }
    Vertex a = rank_[u] <= rank_[v] ? u : v;
    Vertex b = a == u ? v : u;
    return tz_query_loop(
        a, b, start_[a], tz_.t(), [this](Vertex x) { return tz_.bunch(x); },
        [this](Vertex x, unsigned i) -> const Pivot& { return tz_.pivot(x, i); }, true);
}

double PrioritizedOracle::query(Vertex u, Vertex v) const {
    if (u >= size() || v >= size()) throw InvalidArgument("query vertex out of range");
    if (u == v) return 0.0;
    Vertex a = rank_[u] <= rank_[v] ? u : v;
    Vertex b = a == u ? v : u;
    return tz_query_loop(
               a, b, start_[a], tz_.t(), [this](Vertex x) { return tz_.bunch(x); },
               [this](Vertex x, unsigned i) -> const Pivot& { return tz_.pivot(x, i); })
        .estimate;
}

std::vector<Vertex> PrioritizedOracle::query_path(Vertex u, Vertex v) const {
    if (u == v) return {};
    QueryResult q = query_traced(u, v);
    std::vector<Vertex> path, back;
    walk(tz_, q.u, q.w, path);
    walk(tz_, q.v, q.w, back);
    path.insert(path.end(), back.rbegin() + 1, back.rend());
    if (path.front() != u) std::reverse(path.begin(), path.end());
    return path;
}

std::size_t PrioritizedOracle::size_words() const {
    return 3 * tz_.total_entries() + 2 * tz_.all_pivots().size() + 2 * size();
}

void PrioritizedOracle::save(std::ostream& out) const {
    const std::size_t n = size();
    const unsigned t = tz_.t();
    out.write(kMagic, sizeof kMagic);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(n));
    put_u32(out, t);
    put_u64(out, seed_);
    put_u32(out, attempts_);
    for (std::size_t v = 0; v < n; ++v) {
        put_u32(out, rank_[v]);
        put_u32(out, start_[v]);
        put_u32(out, static_cast<std::uint32_t>(tz_.levels().top[v]));
        for (const auto& p : tz_.pivots(Vertex(v))) {
            put_u32(out, p.id);
            put_f64(out, p.dist);
        }
        auto b = tz_.bunch(Vertex(v));
        put_u32(out, static_cast<std::uint32_t>(b.size()));
        for (const auto& e : b) {
            put_u32(out, e.id);
            put_f64(out, e.dist);
            put_u32(out, e.next_hop);
        }
    }
    if (!out) throw Error("failed to write oracle");
}

std::string PrioritizedOracle::serialize() const {
    std::ostringstream ss;
    save(ss);
    return ss.str();
}

PrioritizedOracle PrioritizedOracle::load(std::istream& in) {
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
        throw ParseError("not a priomet oracle file");
    }
    if (get_u32(in) != kVersion) throw ParseError("unsupported oracle file version");
    const std::size_t n = get_u32(in);
    const unsigned t = get_u32(in);
    if (t == 0) throw ParseError("oracle file has t = 0");
    PrioritizedOracle o;
    o.seed_ = get_u64(in);
    o.attempts_ = get_u32(in);
    o.rank_.resize(n);
    o.start_.resize(n);
    LandmarkLevels lv;
    lv.t = t;
    lv.top.resize(n);
    std::vector<Pivot> pivots(n * t);
    std::vector<std::size_t> offset{0};
    std::vector<BunchEntry> entries;
    for (std::size_t v = 0; v < n; ++v) {
        o.rank_[v] = get_u32(in);
        o.start_[v] = get_u32(in);
        lv.top[v] = static_cast<int>(get_u32(in));
        for (unsigned i = 0; i < t; ++i) {
            pivots[v * t + i].id = get_u32(in);
            pivots[v * t + i].dist = get_f64(in);
        }
        std::uint32_t count = get_u32(in);
        for (std::uint32_t k = 0; k < count; ++k) {
            BunchEntry e;
            e.id = get_u32(in);
            e.dist = get_f64(in);
            e.next_hop = get_u32(in);
            if (e.id >= n || e.next_hop >= n) throw ParseError("oracle entry references an unknown vertex");
            entries.push_back(e);
        }
        offset.push_back(entries.size());
    }
    o.tz_ = TzStructure(std::move(lv), std::move(pivots), std::move(offset), std::move(entries));
    return o;
}

SourceRestrictedOracle::SourceRestrictedOracle(const MetricSpace& d, std::vector<Vertex> sources, unsigned t,
                                               std::uint64_t seed)
    : sources_(std::move(sources)) {
    const std::size_t n = d.size();
    std::sort(sources_.begin(), sources_.end());
    sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
    if (sources_.empty()) throw InvalidArgument("source set must be nonempty");
    if (sources_.back() >= n) throw InvalidArgument("source id out of range");
    if (t == 0) throw InvalidArgument("t must be >= 1");
    index_.assign(n, -1);
    for (std::size_t k = 0; k < sources_.size(); ++k) index_[sources_[k]] = static_cast<int>(k);
    anchor_.resize(n);
    anchor_dist_.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        auto row = d.row(Vertex(u));
        Vertex best = sources_[0];
        for (Vertex s : sources_)
            if (row[s] < row[best]) best = s;
        anchor_[u] = best;
        anchor_dist_[u] = row[best];
    }
    const std::size_t k = sources_.size();
    std::vector<Vertex> all(k);
    std::iota(all.begin(), all.end(), Vertex{0});
    Rng rng(seed);
    inner_ = TzStructure(d.restrict_to(sources_), sample_uniform_levels(k, all, t, rng), nullptr);
}

double SourceRestrictedOracle::inner_query(Vertex ka, Vertex kb) const {
    if (ka == kb) return 0.0;
    return tz_query_loop(
               ka, kb, 0, inner_.t(), [this](Vertex x) { return inner_.bunch(x); },
               [this](Vertex x, unsigned i) -> const Pivot& { return inner_.pivot(x, i); })
        .estimate;
}

double SourceRestrictedOracle::query(Vertex a, Vertex b) const {
    if (a >= index_.size() || b >= index_.size()) throw InvalidArgument("query vertex out of range");
    Vertex v = a, u = b;
    if (!is_source(v)) std::swap(u, v);
    if (!is_source(v)) throw InvalidArgument("source-restricted query needs an endpoint in the source set");
    if (u == v) return 0.0;
    Vertex ku = anchor_[u];
    return inner_query(Vertex(index_[v]), Vertex(index_[ku])) + anchor_dist_[u];
}

std::size_t SourceRestrictedOracle::size_words() const {
    return 2 * inner_.total_entries() + 2 * inner_.all_pivots().size() + 2 * anchor_.size();
}

SourceRestrictedOracle build_source_restricted_oracle(const WeightedGraph& g, std::vector<Vertex> sources,
                                                      unsigned t, std::uint64_t seed) {
    return SourceRestrictedOracle(exact_distances(g), std::move(sources), t, seed);
}

}  // namespace priomet
