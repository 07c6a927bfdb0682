#include "pst/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pst {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::out_of_range("edge endpoint out of range: (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
    if (i == j)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  edges_ = std::move(edges);
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j) return false;
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{i, j});
}

std::vector<int> Graph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
  std::vector<int> out;
  for (const auto& [i, j] : edges_) {
    if (i == v) out.push_back(j);
    if (j == v) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Graph::degree(int v) const {
  return static_cast<int>(neighbors(v).size());
}

Graph path_graph(int n) {
  if (n <= 0) throw std::invalid_argument("path needs at least one vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least three vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return Graph(n, std::move(e));
}

Graph complete_graph(int n) {
  if (n <= 0) throw std::invalid_argument("empty complete graph");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph star_graph(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, std::move(e));
}

Graph remove_edge(const Graph& g, int i, int j) {
  if (!g.has_edge(i, j)) throw std::invalid_argument("no such edge");
  if (i > j) std::swap(i, j);
  std::vector<std::pair<int, int>> e;
  for (const auto& edge : g.edges())
    if (edge != std::pair{i, j}) e.push_back(edge);
  return Graph(g.num_vertices(), std::move(e));
}

Hamiltonian build_hamiltonian(const Graph& g, const Potential& q) {
  const int n = g.num_vertices();
  if (static_cast<int>(q.size()) != n)
    throw std::invalid_argument("potential length does not match vertex count");
  for (double x : q)
    if (!std::isfinite(x))
      throw std::invalid_argument("potential has a non-finite entry");

  Hamiltonian h{g, q, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (const auto& [i, j] : g.edges()) {
    h.mat[static_cast<std::size_t>(i) * n + j] = 1.0;
    h.mat[static_cast<std::size_t>(j) * n + i] = 1.0;
  }
  for (int i = 0; i < n; ++i) h.mat[static_cast<std::size_t>(i) * n + i] = q[i];
  return h;
}

std::vector<std::pair<int, int>> find_twins(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> nb(n);
  for (int v = 0; v < n; ++v) nb[v] = g.neighbors(v);

  std::vector<std::pair<int, int>> twins;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v) && nb[u] == nb[v]) twins.emplace_back(u, v);
  return twins;
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.num_vertices();
  const int n2 = g2.num_vertices();
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < n1; ++a)
    for (const auto& [i, j] : g2.edges())
      e.emplace_back(a * n2 + i, a * n2 + j);
  for (const auto& [a, b] : g1.edges())
    for (int c = 0; c < n2; ++c)
      e.emplace_back(a * n2 + c, b * n2 + c);
  return Graph(n1 * n2, std::move(e));
}

Potential combine_potentials(const Potential& q1, const Potential& q2) {
  if (q1.empty() || q2.empty())
    throw std::invalid_argument("empty factor potential");
  Potential out;
  out.reserve(q1.size() * q2.size());
  for (double a : q1)
    for (double b : q2) out.push_back(a + b);
  return out;
}

Potential shift_potential(Potential q, double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("non-finite shift");
  for (double& x : q) x += c;
  return q;
}

}  // namespace pst
