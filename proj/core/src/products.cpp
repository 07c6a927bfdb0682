#include "pst/products.hpp"

#include <cmath>
#include <stdexcept>

namespace pst {

ProductInstance product_pst(const Graph& g1, const Potential& q1, int u, int v,
                            double t1, const Graph& g2, const Potential& q2,
                            int x, int y, double t2) {
  if (!std::isfinite(t1) || !std::isfinite(t2))
    throw std::invalid_argument("non-finite factor time");
  if (std::abs(t1 - t2) > 1e-9)
    throw std::runtime_error("factor transfer times differ beyond 1e-9");

  const SpectralDecomposition d1 = decompose(build_hamiltonian(g1, q1));
  const SpectralDecomposition d2 = decompose(build_hamiltonian(g2, q2));
  const double t = 0.5 * (t1 + t2);
  if (fidelity(d1, u, v, t1) < 1.0 - 1e-8)
    throw std::runtime_error("first factor does not transfer at its time");
  if (fidelity(d2, x, y, t2) < 1.0 - 1e-8)
    throw std::runtime_error("second factor does not transfer at its time");

  ProductInstance out;
  out.graph = cartesian_product(g1, g2);
  out.potential = combine_potentials(q1, q2);
  const int n2 = g2.num_vertices();
  out.source = u * n2 + x;
  out.target = v * n2 + y;
  out.time = t;

  const SpectralDecomposition d = decompose(build_hamiltonian(out.graph, out.potential));
  out.fidelity = fidelity(d, out.source, out.target, t);
  if (out.fidelity < 1.0 - 1e-7)
    throw std::runtime_error("composed instance failed the transfer check");
  return out;
}

double kron_check(const SpectralDecomposition& d1,
                  const SpectralDecomposition& d2,
                  const SpectralDecomposition& d12, double t) {
  const int n1 = d1.n, n2 = d2.n;
  if (d12.n != n1 * n2)
    throw std::invalid_argument("product decomposition has the wrong size");

  const auto u1 = propagator(d1, t);
  const auto u2 = propagator(d2, t);
  const auto u12 = propagator(d12, t);

  double worst = 0.0;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < n1; ++c)
        for (int e = 0; e < n2; ++e) {
          const auto expect = u1[static_cast<std::size_t>(a) * n1 + c] *
                              u2[static_cast<std::size_t>(b) * n2 + e];
          const auto got =
              u12[static_cast<std::size_t>(a * n2 + b) * (n1 * n2) + c * n2 + e];
          worst = std::max(worst, std::abs(got - expect));
        }
  return worst;
}

}  // namespace pst
