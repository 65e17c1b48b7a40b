#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "submark/graphs.hpp"

namespace submark {

/// Raised for any malformed instance file. `line` is 1-based; 0 means the
/// error is not tied to a single line (e.g. a missing section).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/**
 * Parses the plain edge-list format:
 *
 *   <node_count> <edge_count>
 *   <u> <v> [<weight>]
 *   ...
 *
 * Node ids are 1-based in the file. Lines starting with '#' or '%' and blank
 * lines are skipped. With `weighted` set, a third column is accepted and
 * defaults to 1.0 when absent; without it, weight columns are rejected.
 * Throws ParseError on malformed lines, out-of-range ids, self-loops,
 * duplicate edges (in either orientation) and edge-count mismatches.
 */
UndirectedGraph parse_edge_list(std::istream& in, bool weighted);

/**
 * Parses the G-set max-cut format: identical header, but every edge line
 * must carry an integer weight, which may be negative.
 */
UndirectedGraph parse_gset(std::istream& in);

struct SnapParseResult {
    DirectedGraph graph;
    std::vector<std::string> warnings;  // one per clamped arc probability
};

/**
 * Parses a weighted arc list "u v w" with no header, as used for influence
 * instances. `one_indexed` selects between 1-based and 0-based node ids;
 * node_count is 1 + the largest id seen. Weights must be positive. Arc
 * activation probabilities are derived as weight / indegree(target) and
 * clamped to 1 with a warning.
 */
SnapParseResult parse_snap_weighted(std::istream& in, bool one_indexed);

/**
 * Parses a TTP (traveling-thief) instance in the 2017-competition layout:
 * header keys (DIMENSION, NUMBER OF ITEMS, CAPACITY OF KNAPSACK, MIN SPEED,
 * MAX SPEED, RENTING RATIO) followed by NODE_COORD_SECTION and ITEMS
 * SECTION. Leg distances are the ceiling of the Euclidean distance between
 * consecutive cities, with a final leg closing the cycle. Requires at least
 * one item, 0 < MIN SPEED < MAX SPEED, positive capacity and strictly
 * positive leg distances.
 */
TTPInstance parse_ttp(std::istream& in);

/// Inverse of parse_edge_list / parse_gset / parse_snap_weighted; writing a
/// parsed graph and re-parsing it reproduces the identical structure.
void write_edge_list(const UndirectedGraph& graph, std::ostream& out, bool weighted);
void write_gset(const UndirectedGraph& graph, std::ostream& out);
void write_snap_weighted(const DirectedGraph& graph, std::ostream& out, bool one_indexed);

/// File-path conveniences; errors mention the path.
UndirectedGraph load_edge_list(const std::string& path, bool weighted);
UndirectedGraph load_gset(const std::string& path);
SnapParseResult load_snap_weighted(const std::string& path, bool one_indexed);
TTPInstance load_ttp(const std::string& path);

}  // namespace submark
