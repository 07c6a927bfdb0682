#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace pst {

// Vertex potential, one real per vertex.
using Potential = std::vector<double>;

// Finite simple undirected graph on vertices 0..n-1. Edges are normalized
// to i < j, sorted, and duplicate-free, so equal graphs compare equal.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int num_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
// Star with the hub at vertex 0 and the given number of leaves.
Graph star_graph(int leaves);
// Copy of g with one edge removed; the edge must exist.
Graph remove_edge(const Graph& g, int i, int j);

// Dense H = A + diag(Q), kept together with the graph and potential it was
// built from.
struct Hamiltonian {
  Graph graph;
  Potential potential;
  std::vector<double> mat;  // row-major n*n, symmetric

  int size() const { return graph.num_vertices(); }
  double operator()(int i, int j) const {
    return mat[static_cast<std::size_t>(i) * size() + j];
  }
};

Hamiltonian build_hamiltonian(const Graph& g, const Potential& q);

// All unordered pairs {u, v} of distinct non-adjacent vertices with
// N(u) = N(v), sorted lexicographically.
std::vector<std::pair<int, int>> find_twins(const Graph& g);

// Cartesian product; vertex (a, b) of the product is encoded as
// a * g2.num_vertices() + b.
Graph cartesian_product(const Graph& g1, const Graph& g2);

// Potential on the product graph: (a, b) gets q1[a] + q2[b], in the same
// vertex encoding as cartesian_product.
Potential combine_potentials(const Potential& q1, const Potential& q2);

Potential shift_potential(Potential q, double c);

}  // namespace pst
