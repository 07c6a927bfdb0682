#pragma once

#include <cstdint>

#include "pst/certify.hpp"

namespace pst {

// Endpoint transfer instance on the 3-vertex path with potential [0, q, 0]:
//   q = sqrt(8 l^2 / (k^2 - l^2)),  t = 2 pi k / sqrt(q^2 + 8),
// for integers k > l >= 0 of opposite parity.
struct P3Instance {
  long long k = 0;
  long long l = 0;
  double q = 0.0;
  double t = 0.0;
};

P3Instance p3_instance(long long k, long long l);

// Returns q*t and cross-checks the closed forms t = 2 pi sqrt(k^2 - l^2) / sqrt(8)
// and q*t = 2 pi l (so q*t >= 2 pi whenever q != 0).
double qt_product_check(const P3Instance& inst);

struct ScanReport {
  int n = 0;
  int trials = 0;
  FidelityRecord best;       // highest endpoint fidelity seen
  Potential best_potential;  // the potential that produced it
  double threshold = 0.0;    // transfer evidence level tested against
  int refused = 0;           // trials whose certificate came back refused
};

// Random search for endpoint transfer on the n-vertex path: draws `trials`
// mirror-symmetric potentials with entries uniform in [-box, box], scans
// fidelity over [0, t_max], and certifies each instance. Potentials are
// drawn from std::mt19937_64 with one splitmix64-derived stream per trial,
// so reports reproduce bit-identically for a given seed and ties go to the
// lowest trial index. Supports n >= 4 (the 3-vertex path has transfer
// families of its own and is rejected as input error).
ScanReport path_scan(int n, int trials, double t_max, std::uint64_t seed,
                     double box);

}  // namespace pst
