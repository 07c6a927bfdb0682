#pragma once

#include "pst/evolution.hpp"

namespace pst {

struct ProductInstance {
  Graph graph;
  Potential potential;
  int source = 0;
  int target = 0;
  double time = 0.0;
  double fidelity = 0.0;
};

// Composes two transfer instances (u -> v on g1 at t1, x -> y on g2 at t2)
// into one on the Cartesian product: since U(t) factors as U1(t) (x) U2(t),
// the pair state (u, x) reaches (v, y) at the shared time. Factor times
// must agree within 1e-9; each factor must achieve fidelity >= 1 - 1e-8 at
// its own time, and the composed instance is verified to >= 1 - 1e-7.
ProductInstance product_pst(const Graph& g1, const Potential& q1, int u, int v,
                            double t1, const Graph& g2, const Potential& q2,
                            int x, int y, double t2);

// max-norm of U12(t) - U1(t) (x) U2(t), where d12 decomposes the product
// Hamiltonian of the factors behind d1 and d2 (row-major vertex encoding
// (a, b) -> a * n2 + b).
double kron_check(const SpectralDecomposition& d1,
                  const SpectralDecomposition& d2,
                  const SpectralDecomposition& d12, double t);

}  // namespace pst
