#include "pst/paths.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace pst {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [lo, hi) from the top 53 bits, so the stream depends
// only on the engine's specified integer output.
double uniform(std::mt19937_64& eng, double lo, double hi) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

P3Instance p3_instance(long long k, long long l) {
  if (l < 0 || k <= l)
    throw std::invalid_argument("need k > l >= 0");
  if ((k + l) % 2 == 0)
    throw std::invalid_argument("k and l must have opposite parity");

  const double kk = static_cast<double>(k);
  const double ll = static_cast<double>(l);
  const double q = std::sqrt(8.0 * ll * ll / (kk * kk - ll * ll));
  const double t = 2.0 * std::numbers::pi * kk / std::sqrt(q * q + 8.0);
  return P3Instance{k, l, q, t};
}

double qt_product_check(const P3Instance& inst) {
  const double kk = static_cast<double>(inst.k);
  const double ll = static_cast<double>(inst.l);
  const double t_closed =
      2.0 * std::numbers::pi * std::sqrt(kk * kk - ll * ll) / std::sqrt(8.0);
  if (std::abs(inst.t - t_closed) > 1e-9 * std::max(1.0, std::abs(t_closed)))
    throw std::runtime_error("transfer time violates the closed form");

  const double qt = inst.q * inst.t;
  const double expect = 2.0 * std::numbers::pi * ll;
  if (std::abs(qt - expect) > 1e-9 * std::max(1.0, expect))
    throw std::runtime_error("q*t is not the expected multiple of 2*pi");
  return qt;
}

ScanReport path_scan(int n, int trials, double t_max, std::uint64_t seed,
                     double box) {
  if (n == 3)
    throw std::invalid_argument(
        "the 3-vertex path has its own transfer family; scan needs n >= 4");
  if (n < 4) throw std::invalid_argument("scan needs n >= 4");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (!(box > 0.0) || !std::isfinite(box))
    throw std::invalid_argument("box must be positive and finite");

  const Graph g = path_graph(n);
  ScanReport report;
  report.n = n;
  report.trials = trials;
  report.threshold = 1.0 - 1e-6;
  report.best.fidelity = -1.0;

  for (int trial = 0; trial < trials; ++trial) {
    // one independent, order-insensitive stream per trial
    std::mt19937_64 eng(splitmix64(seed ^ splitmix64(trial)));
    Potential q(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      q[i] = uniform(eng, -box, box);
      q[n - 1 - i] = q[i];
    }

    const SpectralDecomposition d = decompose(build_hamiltonian(g, q));
    const FidelityRecord rec = max_fidelity(d, 0, n - 1, t_max);
    if (rec.fidelity > report.best.fidelity) {
      report.best = rec;
      report.best_potential = q;
    }

    if (!certify(d, 0, n - 1).certified) ++report.refused;
  }
  return report;
}

}  // namespace pst
