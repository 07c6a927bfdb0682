#pragma once

#include <string>

#include "pst/graph.hpp"

namespace pst {

struct GraphFile {
  Graph graph;
  Potential potential;
};

// Graph JSON: {"edges": [[i, j], ...], "n": <int>, "potential": [...]}.
// A missing potential defaults to all zeros; a missing or malformed "n" or
// "edges", wrong lengths, or non-finite numbers are input errors.
GraphFile parse_graph_json(const std::string& text);
GraphFile load_graph_json(const std::string& path);

// Serializes with alphabetical keys and 12-significant-digit floats; output
// for a given graph is byte-stable.
std::string graph_json(const Graph& g, const Potential& q);
void save_graph_json(const std::string& path, const Graph& g,
                     const Potential& q);

// The one float format every serialized number uses: %.12g.
std::string format_double(double x);

}  // namespace pst
