#include "pst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pst {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

GraphFile parse_graph_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("graph JSON needs an integer \"n\"");
  const int n = j["n"].get<int>();

  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array())
      throw std::invalid_argument("\"edges\" must be an array of pairs");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw std::invalid_argument("each edge must be a pair of integers");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }

  Potential q(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  if (j.contains("potential")) {
    if (!j["potential"].is_array())
      throw std::invalid_argument("\"potential\" must be an array");
    if (static_cast<int>(j["potential"].size()) != n)
      throw std::invalid_argument("potential length does not match n");
    for (int i = 0; i < n; ++i) {
      if (!j["potential"][i].is_number())
        throw std::invalid_argument("potential entries must be numbers");
      q[i] = j["potential"][i].get<double>();
      if (!std::isfinite(q[i]))
        throw std::invalid_argument("potential has a non-finite entry");
    }
  }

  try {
    return GraphFile{Graph(n, std::move(edges)), std::move(q)};
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(e.what());
  }
}

GraphFile load_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph_json(ss.str());
}

std::string graph_json(const Graph& g, const Potential& q) {
  if (static_cast<int>(q.size()) != g.num_vertices())
    throw std::invalid_argument("potential length does not match vertex count");
  std::ostringstream os;
  os << "{\"edges\":[";
  bool first = true;
  for (const auto& [i, j] : g.edges()) {
    if (!first) os << ',';
    first = false;
    os << '[' << i << ',' << j << ']';
  }
  os << "],\"n\":" << g.num_vertices() << ",\"potential\":[";
  first = true;
  for (double x : q) {
    if (!first) os << ',';
    first = false;
    os << format_double(x);
  }
  os << "]}";
  return os.str();
}

void save_graph_json(const std::string& path, const Graph& g,
                     const Potential& q) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << graph_json(g, q) << '\n';
}

}  // namespace pst
