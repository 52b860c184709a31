#include "priomet/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "priomet/error.hpp"

namespace priomet {

namespace {

// Splits the stream into whitespace-separated tokens per logical line, dropping comments and
// blank lines. Each entry keeps its source line number for error messages.
struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        Line line{no, {}};
        std::string tok;
        while (ss >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t to_uint(const std::string& s, std::size_t line) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail(line, "expected a non-negative integer, got '" + s + "'");
    return v;
}

double to_double(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + s + "'");
    }
    if (used != s.size()) fail(line, "expected a number, got '" + s + "'");
    return v;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return in;
}

}  // namespace

WeightedGraph parse_graph(std::istream& in) {
    auto lines = read_lines(in);
    if (lines.empty()) throw ParseError("empty graph file");
    if (lines[0].tokens.size() != 2) fail(lines[0].number, "header must be 'n m'");
    std::size_t n = to_uint(lines[0].tokens[0], lines[0].number);
    std::size_t m = to_uint(lines[0].tokens[1], lines[0].number);
    if (lines.size() - 1 != m) {
        throw ParseError("header declares " + std::to_string(m) + " edges but the file has " +
                         std::to_string(lines.size() - 1));
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        if (l.tokens.size() != 3) fail(l.number, "edge line must be 'u v w'");
        std::uint64_t u = to_uint(l.tokens[0], l.number);
        std::uint64_t v = to_uint(l.tokens[1], l.number);
        double w = to_double(l.tokens[2], l.number);
        if (u >= n || v >= n) fail(l.number, "vertex id out of range");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
    WeightedGraph g(n, std::move(edges));
    if (!g.connected()) throw DisconnectedError("graph is disconnected");
    return g;
}

WeightedGraph load_graph(const std::string& path) {
    auto in = open(path);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.size() << ' ' << g.edge_count() << '\n' << std::setprecision(17);
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

MetricSpace parse_metric(std::istream& in) {
    auto lines = read_lines(in);
    if (lines.empty()) throw ParseError("empty metric file");
    if (lines[0].tokens.size() != 1) fail(lines[0].number, "header must be 'n'");
    std::size_t n = to_uint(lines[0].tokens[0], lines[0].number);
    if (lines.size() - 1 != n) throw ParseError("metric file must have n rows");
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = lines[i + 1];
        if (l.tokens.size() != n) fail(l.number, "row must have n entries");
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = to_double(l.tokens[j], l.number);
    }
    MetricSpace m(n, std::move(d));
    if (auto err = m.validate(); !err.empty()) throw InvalidArgument("not a metric: " + err);
    return m;
}

MetricSpace load_metric(const std::string& path) {
    auto in = open(path);
    return parse_metric(in);
}

void write_metric(std::ostream& out, const MetricSpace& m) {
    const std::size_t n = m.size();
    out << n << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << m(Vertex(i), Vertex(j));
        out << '\n';
    }
}

PriorityRanking parse_ranking(std::istream& in, std::size_t n) {
    auto lines = read_lines(in);
    std::vector<Vertex> order;
    for (const auto& l : lines) {
        if (l.tokens.size() != 1) fail(l.number, "ranking line must hold one vertex id");
        order.push_back(static_cast<Vertex>(to_uint(l.tokens[0], l.number)));
    }
    if (n && order.size() != n) {
        throw ParseError("ranking has " + std::to_string(order.size()) + " entries, expected " +
                         std::to_string(n));
    }
    return PriorityRanking(std::move(order));
}

PriorityRanking load_ranking(const std::string& path, std::size_t n) {
    auto in = open(path);
    return parse_ranking(in, n);
}

void write_ranking(std::ostream& out, const PriorityRanking& r) {
    for (Vertex v : r.order()) out << v << '\n';
}

}  // namespace priomet
