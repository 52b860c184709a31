#ifndef PRIOMET_IO_HPP
#define PRIOMET_IO_HPP

#include <iosfwd>
#include <string>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/ranking.hpp"

namespace priomet {

// Edge list: "n m" then m lines "u v w"; '#' starts a comment. Throws ParseError for malformed
// input, SelfLoopError / NegativeWeightError for invalid edges and DisconnectedError when the
// graph is not connected.
WeightedGraph parse_graph(std::istream& in);
WeightedGraph load_graph(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

// "n" then n rows of n decimals. Throws ParseError, or InvalidArgument when not a metric.
MetricSpace parse_metric(std::istream& in);
MetricSpace load_metric(const std::string& path);
void write_metric(std::ostream& out, const MetricSpace& m);

// Line k holds the vertex of rank k. `n` is the expected size (0 = infer from the file).
PriorityRanking parse_ranking(std::istream& in, std::size_t n = 0);
PriorityRanking load_ranking(const std::string& path, std::size_t n = 0);
void write_ranking(std::ostream& out, const PriorityRanking& r);

}  // namespace priomet

#endif
